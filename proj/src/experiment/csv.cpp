#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "dnwr/errors.hpp"
#include "dnwr/experiment.hpp"

namespace dnwr {

namespace {

constexpr std::string_view kRecordHeader =
    "theta,iteration,interface_index,interface_norm,aggregate_norm";
constexpr std::string_view kSummaryHeader = "theta,iterations_to_tolerance,stop_reason";
constexpr std::string_view kCasePrefix = "# case: ";

// Locale-independent, round-trips exactly.
std::string real(double value) {
  char buf[40];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void malformed(int line_no, const std::string& what) {
  throw InvalidArgument("CSV line " + std::to_string(line_no) + ": " + what);
}

double to_real(std::string_view text, int line_no) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) malformed(line_no, "bad number '" + std::string(text) + "'");
  return value;
}

int to_int(std::string_view text, int line_no) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) malformed(line_no, "bad integer '" + std::string(text) + "'");
  return value;
}

}  // namespace

void write_csv(std::ostream& out, std::span<const ExperimentResult> results) {
  bool first_block = true;
  for (const auto& result : results) {
    if (!first_block) out << '\n';
    first_block = false;
    if (!result.label.empty()) out << kCasePrefix << result.label << '\n';
    out << kRecordHeader << '\n';
    for (const auto& run : result.runs) {
      const std::string theta = real(run.theta);
      for (std::size_t k = 0; k < run.record.iterations.size(); ++k) {
        const auto& entry = run.record.iterations[k];
        for (std::size_t i = 0; i < entry.interface_norms.size(); ++i) {
          out << theta << ',' << k << ',' << i + 1 << ',' << real(entry.interface_norms[i]) << ','
              << real(entry.aggregate) << '\n';
        }
      }
    }
    out << '\n' << kSummaryHeader << '\n';
    for (const auto& run : result.runs) {
      out << real(run.theta) << ',' << run.record.iteration_count() << ','
          << to_string(run.record.stop_reason) << '\n';
    }
  }
}

std::string to_csv(std::span<const ExperimentResult> results) {
  std::ostringstream out;
  write_csv(out, results);
  return out.str();
}

std::vector<ExperimentResult> parse_csv(std::istream& in) {
  enum class Section { Between, Records, Summary };
  std::vector<ExperimentResult> results;
  Section section = Section::Between;
  std::string pending_label;
  std::string line;
  int line_no = 0;

  auto run_for = [&](ExperimentResult& result, double theta) -> ThetaRun& {
    for (auto& run : result.runs) {
      if (run.theta == theta) return run;
    }
    result.runs.push_back(ThetaRun{theta, {}});
    return result.runs.back();
  };

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view(line);
    if (view.empty()) {
      if (section == Section::Summary) section = Section::Between;
      continue;
    }
    if (view.starts_with(kCasePrefix)) {
      pending_label = std::string(view.substr(kCasePrefix.size()));
      continue;
    }
    if (view == kRecordHeader) {
      results.push_back(ExperimentResult{pending_label, {}});
      pending_label.clear();
      section = Section::Records;
      continue;
    }
    if (view == kSummaryHeader) {
      if (results.empty()) malformed(line_no, "summary before any record block");
      section = Section::Summary;
      continue;
    }

    const auto cols = fields(view);
    if (section == Section::Records) {
      if (cols.size() != 5) malformed(line_no, "expected 5 columns");
      ThetaRun& run = run_for(results.back(), to_real(cols[0], line_no));
      const int k = to_int(cols[1], line_no);
      const int interface = to_int(cols[2], line_no);
      if (k < 0 || interface < 1) malformed(line_no, "negative iteration or interface index");
      auto& iterations = run.record.iterations;
      if (static_cast<std::size_t>(k) >= iterations.size()) iterations.resize(k + 1);
      auto& entry = iterations[k];
      if (static_cast<std::size_t>(interface) != entry.interface_norms.size() + 1) {
        malformed(line_no, "interfaces out of order");
      }
      entry.interface_norms.push_back(to_real(cols[3], line_no));
      entry.aggregate = to_real(cols[4], line_no);
    } else if (section == Section::Summary) {
      if (cols.size() != 3) malformed(line_no, "expected 3 columns");
      ThetaRun& run = run_for(results.back(), to_real(cols[0], line_no));
      if (to_int(cols[1], line_no) != run.record.iteration_count()) {
        malformed(line_no, "summary iteration count disagrees with the record rows");
      }
      if (cols[2] == "tolerance") {
        run.record.stop_reason = StopReason::ToleranceMet;
      } else if (cols[2] == "max_iterations") {
        run.record.stop_reason = StopReason::MaxIterations;
      } else {
        malformed(line_no, "unknown stop reason '" + std::string(cols[2]) + "'");
      }
    } else {
      malformed(line_no, "data outside a block");
    }
  }
  return results;
}

}  // namespace dnwr

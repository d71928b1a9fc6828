#pragma once

// Dirichlet-Neumann waveform relaxation over a strip decomposition.
//
// One outer iteration solves every strip over the whole time window, each with
// Dirichlet data (the previous interface waveforms h^{k-1}, or the physical
// boundary) and/or Neumann data (the +x flux of an already solved neighbour),
// then relaxes every interface waveform:
//
//   h_i^k = theta * (trace of the Neumann-side strip at interface i) + (1 - theta) * h_i^{k-1}
//
// Interface updates happen only after all solves of the iteration complete.

#include <string>
#include <string_view>
#include <vector>

#include "dnwr/model.hpp"
#include "dnwr/stepper.hpp"

namespace dnwr {

/// Solve order and placement of Dirichlet/Neumann conditions.
///  Sweep          - strip 0 Dirichlet, then left to right Neumann (left) / Dirichlet (right).
///  RedBlack       - even strips Dirichlet on both ends, then odd strips Neumann on both ends.
///  CentralOutward - centre strip Dirichlet, then outward with Neumann towards the centre.
///                   Needs an odd strip count >= 3.
enum class Arrangement { Sweep, RedBlack, CentralOutward };

std::string to_string(Arrangement arrangement);
/// Accepts "sweep"/"arr1", "redblack"/"red-black"/"arr2", "central"/"central-outward"/"arr3".
Arrangement parse_arrangement(std::string_view name);

/// How the flux handed to a Neumann neighbour is computed.
///  Conservative - from the discrete equation at the end node; consistent with the
///                 ghost-node Neumann imposition, so the undecomposed discrete solution
///                 is an exact fixed point.
///  OneSided     - second-order one-sided 3-point difference; the fixed point is only
///                 O(dx^2)-close to the undecomposed solution.
enum class FluxScheme { Conservative, OneSided };

struct RunParams {
  double theta = 0.5;
  double tolerance = 1e-6;
  int max_iterations = 100;
  Mode mode = Mode::Error;
  FluxScheme flux = FluxScheme::Conservative;
  /// Run independent solves (red-black phases, central branches) on separate threads.
  bool concurrent = false;

  /// Throws InvalidArgument unless theta in (0,1], tolerance > 0, max_iterations >= 1.
  void validate() const;
};

struct DnwrState {
  int iteration = 0;
  std::vector<InterfaceTrace> traces;  // h^k, one per interface
  std::vector<SubdomainField> fields;  // latest strip solutions, empty before the first iteration
};

/// theta * fresh + (1 - theta) * old, pointwise. Throws ShapeMismatch.
InterfaceTrace relax_update(double theta, const InterfaceTrace& fresh, const InterfaceTrace& old);

/// Throws InvalidArgument when the arrangement cannot be used with `subdomains` strips
/// (EvenSubdomainCount for CentralOutward with an even count).
void check_arrangement(Arrangement arrangement, int subdomains);

DnwrState iterate_sweep(const DnwrState& state, const ProblemSpec& spec, const SpaceTimeGrid& grid,
                        const Decomposition& decomp, const RunParams& params);
DnwrState iterate_redblack(const DnwrState& state, const ProblemSpec& spec,
                           const SpaceTimeGrid& grid, const Decomposition& decomp,
                           const RunParams& params);
DnwrState iterate_central(const DnwrState& state, const ProblemSpec& spec,
                          const SpaceTimeGrid& grid, const Decomposition& decomp,
                          const RunParams& params);
DnwrState iterate(Arrangement arrangement, const DnwrState& state, const ProblemSpec& spec,
                  const SpaceTimeGrid& grid, const Decomposition& decomp, const RunParams& params);

/// For each interface, the strip that receives Dirichlet data there (Left = strip i,
/// Right = strip i+1).
std::vector<Side> dirichlet_sides(Arrangement arrangement, int subdomains);

struct DnwrResult {
  ConvergenceRecord record;
  std::vector<InterfaceTrace> traces;
  std::vector<SubdomainField> fields;
};

/// Iterate until the aggregate interface norm drops to the tolerance or the
/// iteration budget runs out. Error mode measures ||h^k||, full mode ||h^k - h^{k-1}||.
/// Entry 0 of the record holds the norms of the initial traces.
DnwrResult run_dnwr(const ProblemSpec& spec, const SpaceTimeGrid& grid, const Decomposition& decomp,
                    Arrangement arrangement, const RunParams& params,
                    std::vector<InterfaceTrace> initial_traces);

}  // namespace dnwr

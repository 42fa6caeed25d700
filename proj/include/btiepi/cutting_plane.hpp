#pragma once

#include "btiepi/lp.hpp"
#include "btiepi/ucmodel.hpp"

namespace btiepi {

struct CuttingPlaneOptions {
  int max_rounds = 200;
  double violation_tol = 1e-7;
  SimplexOptions simplex;
};

struct CuttingPlaneResult {
  SolveResult lp;  // final relaxation solve
  int rounds = 0;  // separation rounds that added at least one cut
  int cuts_added = 0;
  bool hit_round_cap = false;
};

/// Cutting-plane driver for a model in BTI mode: solve the relaxation, separate each
/// marked unit's (u_i, csum_i) against the start-up cost epigraph, add the violated
/// inequalities as rows, repeat. Cuts are deduplicated by quantized coefficients.
CuttingPlaneResult cutting_plane_solve(UCModel& model, const UCInstance& instance,
                                       const CuttingPlaneOptions& opts = {});

struct RelaxationBound {
  double value = 0.0;
  SolveStatus status = SolveStatus::IterationLimit;
  int cuts = 0;
  int rounds = 0;
};

/// LP relaxation bound of a formulation; for BTI mode this runs the cutting-plane
/// loop to convergence.
RelaxationBound relaxation_bound(const UCInstance& instance, Formulation formulation,
                                 const CuttingPlaneOptions& opts = {});

/// MIP reference value, solved once per instance on the 3-Bin model (the smallest
/// exact static formulation).
SolveResult mip_reference(const UCInstance& instance, const MipOptions& opts = {});

struct GapReport {
  double lp_bound = 0.0;
  double mip_objective = 0.0;
  double gap = 0.0;  // (mip - lp) / mip, 0 when mip is 0
  int cuts = 0;
  int rounds = 0;
  SolveStatus lp_status = SolveStatus::IterationLimit;
  SolveStatus mip_status = SolveStatus::IterationLimit;
};

GapReport integrality_gap(const UCInstance& instance, Formulation formulation,
                          const CuttingPlaneOptions& cp_opts = {}, const MipOptions& mip_opts = {});

}  // namespace btiepi

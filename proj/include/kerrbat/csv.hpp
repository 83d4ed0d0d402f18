// csv.hpp — result persistence. Trajectory CSV columns are fixed:
//   t,T,E_B,E_A,W,P_B,ratio,trace_err,min_eig,tail_pop_a,tail_pop_b
// sweep CSV columns:
//   U,gamma,F,E_max,t_max,T_max,W_at_tmax,ratio_at_tmax,P_B_max,t_at_P_B_max,taint
// Numbers carry 12 significant digits; NaN serializes as an empty field.
// emit_plotdata writes the same series whitespace-separated for gnuplot,
// with `#` metadata lines.

#pragma once

#include "kerrbat/harness.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace kerrbat::csv {

void emit_csv(const ObservableTrajectory& traj, std::ostream& out);
void emit_csv(const ObservableTrajectory& traj, const std::string& path);
void emit_csv(const SweepResult& result, std::ostream& out);
void emit_csv(const SweepResult& result, const std::string& path);

void emit_plotdata(const ObservableTrajectory& traj, std::ostream& out,
                   const std::vector<std::string>& metadata = {});
void emit_plotdata(const ObservableTrajectory& traj, const std::string& path,
                   const std::vector<std::string>& metadata = {});
void emit_plotdata(const SweepResult& result, std::ostream& out,
                   const std::vector<std::string>& metadata = {});
void emit_plotdata(const SweepResult& result, const std::string& path,
                   const std::vector<std::string>& metadata = {});

// 12-significant-digit rendering used everywhere above.
std::string format_number(double value);

} // namespace kerrbat::csv

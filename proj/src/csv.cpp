#include "kerrbat/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace kerrbat::csv {

namespace {

constexpr const char* kTrajectoryHeader =
    "t,T,E_B,E_A,W,P_B,ratio,trace_err,min_eig,tail_pop_a,tail_pop_b";
constexpr const char* kSweepHeader =
    "U,gamma,F,E_max,t_max,T_max,W_at_tmax,ratio_at_tmax,P_B_max,t_at_P_B_max,taint";

void write_fields(std::ostream& out, const std::vector<double>& fields, char sep) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            out << sep;
        }
        if (std::isnan(fields[i])) {
            if (sep != ',') {
                out << "nan"; // keep plotdata columns aligned
            }
        } else {
            out << format_number(fields[i]);
        }
    }
    out << '\n';
}

std::vector<double> trajectory_row(const ObservableTrajectory& traj, size_t k) {
    const auto& d = traj.diagnostics[k];
    return {traj.times[k],      traj.dimensionless_T[k], traj.E_B[k],   traj.E_A[k],
            traj.W[k],          traj.P_B[k],             traj.ratio[k], d.trace_err,
            d.min_eigenvalue,   d.tail_pop_charger,      d.tail_pop_battery};
}

std::vector<double> sweep_row(const SweepRow& row) {
    return {row.U,          row.gamma,        row.F,       row.e_max,
            row.t_max,      row.T_max,        row.W_at_tmax, row.ratio_at_tmax,
            row.p_b_max,    row.t_at_p_b_max, row.tainted ? 1.0 : 0.0};
}

template <class Emit>
void to_path(const std::string& path, Emit&& emit) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("emit: cannot open '" + path + "' for writing");
    }
    emit(out);
    out.flush();
    if (!out) {
        throw std::runtime_error("emit: write to '" + path + "' failed");
    }
}

std::string spaced(const char* csv_header) {
    std::string h = csv_header;
    for (char& c : h) {
        if (c == ',') {
            c = ' ';
        }
    }
    return h;
}

} // namespace

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

void emit_csv(const ObservableTrajectory& traj, std::ostream& out) {
    out << kTrajectoryHeader << '\n';
    for (size_t k = 0; k < traj.times.size(); ++k) {
        write_fields(out, trajectory_row(traj, k), ',');
    }
}

void emit_csv(const ObservableTrajectory& traj, const std::string& path) {
    to_path(path, [&](std::ostream& out) { emit_csv(traj, out); });
}

void emit_csv(const SweepResult& result, std::ostream& out) {
    out << kSweepHeader << '\n';
    for (const auto& row : result.rows) {
        write_fields(out, sweep_row(row), ',');
    }
}

void emit_csv(const SweepResult& result, const std::string& path) {
    to_path(path, [&](std::ostream& out) { emit_csv(result, out); });
}

void emit_plotdata(const ObservableTrajectory& traj, std::ostream& out,
                   const std::vector<std::string>& metadata) {
    for (const auto& line : metadata) {
        out << "# " << line << '\n';
    }
    out << "# " << spaced(kTrajectoryHeader) << '\n';
    for (size_t k = 0; k < traj.times.size(); ++k) {
        write_fields(out, trajectory_row(traj, k), ' ');
    }
}

void emit_plotdata(const ObservableTrajectory& traj, const std::string& path,
                   const std::vector<std::string>& metadata) {
    to_path(path, [&](std::ostream& out) { emit_plotdata(traj, out, metadata); });
}

void emit_plotdata(const SweepResult& result, std::ostream& out,
                   const std::vector<std::string>& metadata) {
    for (const auto& line : metadata) {
        out << "# " << line << '\n';
    }
    out << "# " << spaced(kSweepHeader) << '\n';
    for (const auto& row : result.rows) {
        write_fields(out, sweep_row(row), ' ');
    }
}

void emit_plotdata(const SweepResult& result, const std::string& path,
                   const std::vector<std::string>& metadata) {
    to_path(path, [&](std::ostream& out) { emit_plotdata(result, out, metadata); });
}

} // namespace kerrbat::csv

#include "nnlif/csv_output.hpp"

#include "nnlif/errors.hpp"

#include <cstdio>
#include <fstream>

namespace nnlif {

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + path.string());
    return out;
}

std::string optional_cell(const std::optional<double>& x, bool blank_when_missing) {
    if (x) return format_real(*x);
    return blank_when_missing ? "" : "unstable";
}

}  // namespace

void write_rate_csv(std::ostream& out, std::span<const RatePoint> rate) {
    out << "t,N\r\n";
    for (const auto& r : rate) out << format_real(r.t) << ',' << format_real(r.n) << "\r\n";
}

void write_snapshots_csv(std::ostream& out, std::span<const Snapshot> snapshots,
                         std::span<const double> v) {
    out << "t,v,p\r\n";
    for (const auto& s : snapshots) {
        for (std::size_t i = 0; i < s.p.size(); ++i) {
            out << format_real(s.t) << ',' << format_real(v[i]) << ',' << format_real(s.p[i]) << "\r\n";
        }
    }
}

void write_entropy_csv(std::ostream& out, std::span<const EntropyReport> entropy) {
    out << "t,S,bulk,boundary\r\n";
    for (const auto& e : entropy) {
        out << format_real(e.t) << ',' << format_real(e.s) << ',' << format_real(e.bulk) << ','
            << format_real(e.boundary) << "\r\n";
    }
}

void write_mass_csv(std::ostream& out, std::span<const MassPoint> mass) {
    out << "t,mass,R\r\n";
    for (const auto& m : mass) {
        out << format_real(m.t) << ',' << format_real(m.mass) << ',' << format_real(m.r) << "\r\n";
    }
}

void write_energy_csv(std::ostream& out, std::span<const EnergyPoint> energy) {
    out << "t,E\r\n";
    for (const auto& e : energy) out << format_real(e.t) << ',' << format_real(e.e) << "\r\n";
}

void write_orders_csv(std::ostream& out, std::span<const OrderRow> rows) {
    out << "level,h_or_tau,err_L1,order_L1,err_Linf,order_Linf\r\n";
    for (const auto& r : rows) {
        out << r.level << ',' << format_real(r.step) << ',' << optional_cell(r.err_l1, false) << ','
            << optional_cell(r.order_l1, r.last) << ',' << optional_cell(r.err_linf, false) << ','
            << optional_cell(r.order_linf, r.last) << "\r\n";
    }
}

void write_run_outputs(const RunResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        auto out = open_csv(dir / "rate.csv");
        write_rate_csv(out, result.rate);
    }
    {
        auto out = open_csv(dir / "snapshots.csv");
        write_snapshots_csv(out, result.snapshots, result.v);
    }
    {
        auto out = open_csv(dir / "mass.csv");
        write_mass_csv(out, result.mass);
    }
    if (result.entropy_reference) {
        auto out = open_csv(dir / "entropy.csv");
        write_entropy_csv(out, result.entropy);
    }
    if (!result.energy.empty()) {
        auto out = open_csv(dir / "energy.csv");
        write_energy_csv(out, result.energy);
    }
}

void write_orders(std::span<const OrderRow> rows, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto out = open_csv(dir / "orders.csv");
    write_orders_csv(out, rows);
}

void write_stationary_rates(std::span<const double> rates, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto out = open_csv(dir / "stationary.csv");
    out << "N_inf\r\n";
    for (double r : rates) out << format_real(r) << "\r\n";
}

}  // namespace nnlif

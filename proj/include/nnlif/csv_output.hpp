#pragma once

#include "nnlif/harness.hpp"

#include <filesystem>
#include <ostream>
#include <span>

namespace nnlif {

/// Shortest-safe round trip: 17 significant digits, '.' decimal point.
std::string format_real(double x);

void write_rate_csv(std::ostream& out, std::span<const RatePoint> rate);
void write_snapshots_csv(std::ostream& out, std::span<const Snapshot> snapshots,
                         std::span<const double> v);
void write_entropy_csv(std::ostream& out, std::span<const EntropyReport> entropy);
void write_mass_csv(std::ostream& out, std::span<const MassPoint> mass);
void write_energy_csv(std::ostream& out, std::span<const EnergyPoint> energy);
void write_orders_csv(std::ostream& out, std::span<const OrderRow> rows);

/// rate.csv, snapshots.csv and mass.csv always; entropy.csv and energy.csv
/// when the run recorded them. Creates dir if needed.
void write_run_outputs(const RunResult& result, const std::filesystem::path& dir);

void write_orders(std::span<const OrderRow> rows, const std::filesystem::path& dir);

/// stationary.csv with the single column N_inf.
void write_stationary_rates(std::span<const double> rates, const std::filesystem::path& dir);

}  // namespace nnlif

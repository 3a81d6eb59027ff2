#pragma once

#include "zenochain/params.hpp"
#include "zenochain/protocol.hpp"

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zenochain {

inline constexpr std::string_view kFormatVersion = "zenochain-report/1";

class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Thrown for malformed sweep configurations.
class SpecError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

struct ReportRow
{
    ProtocolParams params;
    OutcomeReport outcome;
    // Single inner chain with the same kappa2 / effective kappa3: W'1, W'2.
    double inner_w1 = 0.0;
    double inner_w2 = 0.0;
    // Present for no-blocks rows.
    std::optional<double> eta_nb_closed_form;
};

ReportRow make_row(const ProtocolParams& params);

// M, N, kappa1, kappa2, kappa3, blocks, w1, w2, w3_total, w_res,
// w_tr_entering, w_tr_absorbed, eta, eta_nb_closed_form, inner_w1, inner_w2
const std::vector<std::string>& csv_columns();

enum class OutputFormat { csv, json };
enum class Scenario { no_blocks, with_blocks, both };
enum class Spacing { linear, log };

struct SweepAxis
{
    std::string name;
    // Parameters that follow this axis in lockstep (e.g. kappa3 tied to kappa2).
    std::vector<std::string> linked;
    double start = 0.0;
    double stop = 0.0;
    std::size_t steps = 1;
    Spacing spacing = Spacing::linear;

    // steps points from start to stop inclusive; a single step yields start.
    std::vector<double> values() const;
};

struct SweepSpec
{
    std::vector<SweepAxis> axes;
    ProtocolParams fixed;
    // Overrides kappa1 with balanced_kappa1(N, kappa2) at every grid point.
    bool balanced = false;
    Scenario scenario = Scenario::both;
    OutputFormat format = OutputFormat::csv;
    std::string out;

    void validate() const;
};

SweepSpec parse_sweep_spec(std::string_view json_text);
SweepSpec load_sweep_spec(const std::string& path);
std::string sweep_spec_to_json(const SweepSpec& spec);

// Grid points expanded lexicographically (first axis slowest); with
// Scenario::both every point yields its no-blocks row then its with-blocks row.
std::vector<ProtocolParams> expand_sweep(const SweepSpec& spec);

// Rows in expand_sweep order. Points are evaluated on up to `threads` workers.
std::vector<ReportRow> run_sweep(const SweepSpec& spec, unsigned threads = 0);

void write_rows(std::ostream& os, std::span<const ReportRow> rows, OutputFormat format);

// Table of published with-blocks values.
enum class Table1Setting { no_dissipation, balanced_lossless, balanced_lossy };

struct Table1Reference
{
    std::size_t outer_count;
    std::size_t inner_count;
    Table1Setting setting;
    double w2;
    double w_tr;
};

const std::vector<Table1Reference>& table1_reference();
ProtocolParams table1_params(const Table1Reference& ref);
std::string_view to_string(Table1Setting setting);

struct Table1Row
{
    Table1Reference reference;
    ProtocolParams params;
    OutcomeReport outcome;

    double delta_w2() const { return outcome.w2 - reference.w2; }
    double delta_w_tr(bool entering_convention) const;
};

struct Table1Result
{
    std::vector<Table1Row> rows;
    // Largest |delta W_Tr| under each convention.
    double max_delta_entering = 0.0;
    double max_delta_absorbed = 0.0;

    bool entering_matches_better() const { return max_delta_entering <= max_delta_absorbed; }
};

Table1Result run_table1();
void write_table1(std::ostream& os, const Table1Result& result, OutputFormat format);

// With-blocks evaluation at kappa1 = balanced_kappa1(N, kappa2), kappa3 = kappa2.
ReportRow balance_row(std::size_t outer_count, std::size_t inner_count, double kappa2);

struct FigureSpec
{
    std::string name;
    SweepSpec spec;
};

// Sweep grids behind the figure reproductions; identical to configs/*.json.
std::vector<FigureSpec> figure_specs();

// Writes rows (or a table) to `path`, or to standard output for "" / "-".
// Throws IoError when the file cannot be written.
void write_output(const std::string& path, const std::string& content);

} // namespace zenochain

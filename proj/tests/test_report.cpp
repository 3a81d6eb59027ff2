#include "zenochain/report.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

using namespace zenochain;

namespace {

std::vector<std::string> split(const std::string& line, char sep = ',')
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, sep))
        out.push_back(field);
    if (!line.empty() && line.back() == sep)
        out.emplace_back();
    return out;
}

// Parses CSV emitted by write_rows into column -> text maps.
std::vector<std::map<std::string, std::string>> parse_csv(const std::string& text)
{
    std::istringstream is(text);
    std::string line;
    std::getline(is, line);
    REQUIRE(line == "# " + std::string(kFormatVersion));
    std::getline(is, line);
    const auto header = split(line);
    std::vector<std::map<std::string, std::string>> rows;
    while (std::getline(is, line)) {
        const auto fields = split(line);
        REQUIRE(fields.size() == header.size());
        std::map<std::string, std::string> row;
        for (std::size_t i = 0; i < header.size(); ++i)
            row[header[i]] = fields[i];
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string to_csv(const std::vector<ReportRow>& rows)
{
    std::ostringstream os;
    write_rows(os, rows, OutputFormat::csv);
    return os.str();
}

const SweepSpec& figure(const std::string& name)
{
    static const auto figs = figure_specs();
    for (const auto& f : figs)
        if (f.name == name)
            return f.spec;
    FAIL("no figure " << name);
    throw std::logic_error("unreachable");
}

} // namespace

TEST_CASE("axis values")
{
    SweepAxis a{"kappa2", {}, 0.0, 0.5, 6, Spacing::linear};
    const auto lin = a.values();
    REQUIRE(lin.size() == 6);
    CHECK(lin.front() == 0.0);
    CHECK(lin[1] == doctest::Approx(0.1));
    CHECK(lin.back() == 0.5);

    SweepAxis l{"kappa2", {}, 1e-4, 1e-2, 201, Spacing::log};
    const auto lg = l.values();
    CHECK(lg.front() == 1e-4);
    CHECK(lg.back() == 1e-2);
    CHECK(lg[100] == doctest::Approx(1e-3).epsilon(1e-14));

    SweepAxis one{"M", {}, 7, 99, 1, Spacing::linear};
    CHECK(one.values() == std::vector<double>{7.0});
}

TEST_CASE("sweep spec parsing")
{
    const auto spec = parse_sweep_spec(R"({
        "axes": [{"name": "M", "start": 2, "stop": 4, "steps": 3},
                 {"name": "kappa2", "linked": ["kappa3"], "start": 0, "stop": 0.1, "steps": 2}],
        "fixed": {"N": 5, "kappa1": 0.01},
        "scenario": "both",
        "format": "json",
        "out": "x.json"})");
    CHECK(spec.axes.size() == 2);
    CHECK(spec.axes[1].linked == std::vector<std::string>{"kappa3"});
    CHECK(spec.fixed.inner_count == 5);
    CHECK(spec.fixed.kappa1 == 0.01);
    CHECK(spec.format == OutputFormat::json);
    CHECK(spec.out == "x.json");

    const auto points = expand_sweep(spec);
    REQUIRE(points.size() == 3 * 2 * 2);
    // first axis slowest, no-blocks before with-blocks
    CHECK(points[0].outer_count == 2);
    CHECK(points[0].kappa2 == 0.0);
    CHECK_FALSE(points[0].bob_blocks);
    CHECK(points[1].bob_blocks);
    CHECK(points[2].kappa2 == 0.1);
    CHECK(points[2].kappa3 == 0.1);
    CHECK(points[4].outer_count == 3);
    CHECK(points.back().outer_count == 4);

    CHECK(parse_sweep_spec(sweep_spec_to_json(spec)).axes.size() == 2);
    CHECK(sweep_spec_to_json(parse_sweep_spec(sweep_spec_to_json(spec))) == sweep_spec_to_json(spec));
}

TEST_CASE("sweep spec errors")
{
    CHECK_THROWS_AS(parse_sweep_spec("{not json"), SpecError);
    CHECK_THROWS_AS(parse_sweep_spec(R"({"bogus": 1})"), SpecError);
    CHECK_THROWS_AS(parse_sweep_spec(R"({"axes": [{"name": "theta", "start": 0}]})"), SpecError);
    CHECK_THROWS_AS(parse_sweep_spec(R"({"axes": [{"name": "M", "start": 1, "stop": 3, "steps": 0}]})"), SpecError);
    CHECK_THROWS_AS(parse_sweep_spec(R"({"axes": [{"name": "kappa2", "start": 0, "stop": 1, "steps": 3, "spacing": "log"}]})"),
                    SpecError);
    CHECK_THROWS_AS(parse_sweep_spec(R"({"fixed": {"kappa1": 2}})"), SpecError);
    CHECK_THROWS_AS(parse_sweep_spec(R"({"scenario": "sometimes"})"), SpecError);
    CHECK_THROWS_AS(expand_sweep(parse_sweep_spec(R"({"axes": [{"name": "M", "start": 1, "stop": 2, "steps": 3}]})")),
                    SpecError);
    CHECK_THROWS_AS(load_sweep_spec("/nonexistent/dir/spec.json"), IoError);
}

TEST_CASE("csv layout and full-precision round trip")
{
    ProtocolParams p;
    p.outer_count = 6;
    p.inner_count = 12;
    p.kappa1 = 0.1234567890123456;
    p.kappa2 = 1e-4;
    p.kappa3 = 1e-4;
    std::vector<ReportRow> rows = {make_row(p)};
    p.bob_blocks = true;
    rows.push_back(make_row(p));
    p.kappa1 = balanced_kappa1(12, 1e-4);
    rows.push_back(make_row(p));

    const auto text = to_csv(rows);
    std::istringstream is(text);
    std::string line;
    std::getline(is, line);
    std::getline(is, line);
    CHECK(line ==
          "M,N,kappa1,kappa2,kappa3,blocks,w1,w2,w3_total,w_res,w_tr_entering,w_tr_absorbed,eta,eta_nb_closed_form,"
          "inner_w1,inner_w2");

    const auto parsed = parse_csv(text);
    REQUIRE(parsed.size() == 3);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        CHECK(std::strtod(parsed[i].at("kappa1").c_str(), nullptr) == r.params.kappa1);
        CHECK(std::strtod(parsed[i].at("w1").c_str(), nullptr) == r.outcome.w1);
        CHECK(std::strtod(parsed[i].at("w2").c_str(), nullptr) == r.outcome.w2);
        CHECK(std::strtod(parsed[i].at("w_res").c_str(), nullptr) == r.outcome.w_res);
        CHECK(std::strtod(parsed[i].at("w_tr_entering").c_str(), nullptr) == r.outcome.w_tr);
        CHECK(std::strtod(parsed[i].at("inner_w2").c_str(), nullptr) == r.inner_w2);
    }
    CHECK(parsed[0].at("blocks") == "0");
    CHECK_FALSE(parsed[0].at("eta_nb_closed_form").empty());
    CHECK(parsed[1].at("eta_nb_closed_form").empty());
    CHECK(parsed[2].at("eta") == "inf");
}

TEST_CASE("json output encodes infinity as a string")
{
    const auto row = balance_row(6, 12, 0.0);
    std::ostringstream os;
    write_rows(os, std::vector<ReportRow>{row}, OutputFormat::json);
    const auto text = os.str();
    CHECK(text.find("\"eta\": \"inf\"") != std::string::npos);
    CHECK(text.find(std::string(kFormatVersion)) != std::string::npos);
}

TEST_CASE("sweeps are deterministic regardless of worker count")
{
    auto spec = figure("fig3b");
    spec.axes[0].stop = 6;
    spec.axes[0].steps = 5;
    spec.axes[1].stop = 8;
    spec.axes[1].steps = 7;
    const auto a = to_csv(run_sweep(spec, 1));
    const auto b = to_csv(run_sweep(spec, 8));
    CHECK(a == b);
    CHECK(a == to_csv(run_sweep(spec, 0)));
}

TEST_CASE("checked-in figure configs match the built-in grids")
{
    for (const auto& fig : figure_specs()) {
        const auto path = std::string(ZENOCHAIN_CONFIG_DIR) + "/" + fig.name + ".json";
        CAPTURE(path);
        CHECK(sweep_spec_to_json(load_sweep_spec(path)) == sweep_spec_to_json(fig.spec));
    }
}

TEST_CASE("fig2a grid keeps D'1 dark")
{
    const auto rows = run_sweep(figure("fig2a"));
    REQUIRE(rows.size() == 51);
    for (const auto& r : rows)
        CHECK(r.inner_w1 <= 1e-20);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].inner_w2 < rows[i - 1].inner_w2);
}

TEST_CASE("fig3b grid: with-blocks reliability grows with N at fixed M")
{
    const auto rows = run_sweep(figure("fig3b"));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].params.outer_count != rows[i - 1].params.outer_count)
            continue;
        CHECK(rows[i].outcome.eta.value() > rows[i - 1].outcome.eta.value());
    }
}

TEST_CASE("fig5 grid: reliability peaks at the balanced kappa1")
{
    const auto& spec = figure("fig5");
    const auto rows = run_sweep(spec);
    const auto kappa1_grid = spec.axes[1].values();
    const std::size_t per_row = kappa1_grid.size();
    REQUIRE(rows.size() == spec.axes[0].steps * per_row);
    for (std::size_t r = 0; r < spec.axes[0].steps; ++r) {
        const double kappa2 = rows[r * per_row].params.kappa2;
        const double target = balanced_kappa1(12, kappa2);
        std::size_t best = 0;
        double best_eta = -1.0;
        for (std::size_t i = 0; i < per_row; ++i) {
            const auto& eta = rows[r * per_row + i].outcome.eta;
            const double v = eta.is_infinite() ? INFINITY : eta.value();
            if (v > best_eta) {
                best_eta = v;
                best = i;
            }
        }
        CAPTURE(kappa2);
        // argmax is a grid neighbour of the balanced value
        CHECK(std::abs(kappa1_grid[best] - target) <= (kappa1_grid[1] - kappa1_grid[0]));
    }
}

TEST_CASE("table1 selects the entering convention")
{
    const auto result = run_table1();
    CHECK(result.rows.size() == 21);
    CHECK(result.entering_matches_better());
    std::ostringstream os;
    write_table1(os, result, OutputFormat::csv);
    CHECK(os.str().find("w_tr_convention=entering_probability") != std::string::npos);
}

TEST_CASE("balance rows")
{
    const auto r = balance_row(6, 12, 0.0);
    CHECK(r.params.kappa1 == doctest::Approx(0.186335087701509357).epsilon(1e-14));
    CHECK(r.outcome.w1 <= 1e-20);
    CHECK(r.params.bob_blocks);

    const auto lossy = balance_row(6, 12, 1e-4);
    CHECK(lossy.params.kappa1 == doctest::Approx(0.187229671723563796).epsilon(1e-14));
    CHECK(lossy.outcome.w1 <= 1e-20);

    CHECK(balance_row(6, 1, 0.0).params.kappa1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(balance_row(6, 12, 1.5), std::invalid_argument);
}

TEST_CASE("write_output reports unwritable paths")
{
    CHECK_THROWS_AS(write_output("/nonexistent/dir/out.csv", "x"), IoError);
}

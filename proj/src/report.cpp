#include "zenochain/report.hpp"

#include "zenochain/format.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace zenochain {

using nlohmann::json;

namespace {

const std::vector<std::string> kParamNames = {"M", "N", "kappa1", "kappa2", "kappa3"};

bool is_count_param(const std::string& name) { return name == "M" || name == "N"; }

void set_param(ProtocolParams& p, const std::string& name, double value)
{
    if (is_count_param(name)) {
        const double rounded = std::round(value);
        if (std::abs(value - rounded) > 1e-9 || rounded < 1.0)
            throw SpecError("axis value for " + name + " is not a positive integer: " + format_double(value));
        (name == "M" ? p.outer_count : p.inner_count) = static_cast<std::size_t>(rounded);
    } else if (name == "kappa1") {
        p.kappa1 = value;
    } else if (name == "kappa2") {
        p.kappa2 = value;
    } else if (name == "kappa3") {
        p.kappa3 = value;
    } else {
        throw SpecError("unknown sweep parameter '" + name + "'");
    }
}

void check_param_name(const std::string& name)
{
    if (std::find(kParamNames.begin(), kParamNames.end(), name) == kParamNames.end())
        throw SpecError("unknown sweep parameter '" + name + "' (expected M, N, kappa1, kappa2 or kappa3)");
}

std::string_view to_string(Scenario s)
{
    switch (s) {
    case Scenario::no_blocks:
        return "no_blocks";
    case Scenario::with_blocks:
        return "with_blocks";
    case Scenario::both:
        return "both";
    }
    return "";
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }
std::string_view to_string(Spacing s) { return s == Spacing::linear ? "linear" : "log"; }

template <class Enum>
Enum parse_enum(const json& j, const char* what, std::initializer_list<std::pair<std::string_view, Enum>> options)
{
    if (!j.is_string())
        throw SpecError(std::string(what) + " must be a string");
    const auto text = j.get<std::string>();
    for (const auto& [name, value] : options)
        if (text == name)
            return value;
    throw SpecError(std::string("invalid ") + what + " '" + text + "'");
}

void reject_unknown_keys(const json& j, std::initializer_list<std::string_view> allowed, const char* where)
{
    for (const auto& item : j.items())
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
            throw SpecError("unknown key '" + item.key() + "' in " + where);
}

double get_number(const json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_number())
        throw SpecError(std::string("'") + key + "' must be a number");
    return j.at(key).get<double>();
}

json reliability_json(const Reliability& r)
{
    if (r.is_finite())
        return r.value();
    return r.to_string();
}

json number_json(double v)
{
    if (std::isfinite(v))
        return v;
    return format_double(v);
}

json row_json(const ReportRow& row)
{
    const auto& p = row.params;
    const auto& o = row.outcome;
    json j;
    j["M"] = p.outer_count;
    j["N"] = p.inner_count;
    j["kappa1"] = p.kappa1;
    j["kappa2"] = p.kappa2;
    j["kappa3"] = p.kappa3;
    j["blocks"] = p.bob_blocks;
    j["w1"] = o.w1;
    j["w2"] = o.w2;
    j["w3_total"] = o.w3_total();
    j["w_res"] = o.w_res;
    j["w_tr_entering"] = o.w_tr;
    j["w_tr_absorbed"] = o.w_tr_absorbed;
    j["eta"] = reliability_json(o.eta);
    j["eta_nb_closed_form"] = row.eta_nb_closed_form ? number_json(*row.eta_nb_closed_form) : json(nullptr);
    j["inner_w1"] = row.inner_w1;
    j["inner_w2"] = row.inner_w2;
    return j;
}

void write_csv_row(std::ostream& os, const ReportRow& row)
{
    const auto& p = row.params;
    const auto& o = row.outcome;
    os << p.outer_count << ',' << p.inner_count << ',' << format_double(p.kappa1) << ',' << format_double(p.kappa2)
       << ',' << format_double(p.kappa3) << ',' << (p.bob_blocks ? 1 : 0) << ',' << format_double(o.w1) << ','
       << format_double(o.w2) << ',' << format_double(o.w3_total()) << ',' << format_double(o.w_res) << ','
       << format_double(o.w_tr) << ',' << format_double(o.w_tr_absorbed) << ',' << o.eta.to_string() << ','
       << (row.eta_nb_closed_form ? format_double(*row.eta_nb_closed_form) : std::string()) << ','
       << format_double(row.inner_w1) << ',' << format_double(row.inner_w2) << '\n';
}

} // namespace

ReportRow make_row(const ProtocolParams& params)
{
    ReportRow row;
    row.params = params;
    row.outcome = evaluate(params);
    const auto inner = inner_coefficients(params.inner_count, params.kappa2, params.effective_kappa3());
    row.inner_w1 = inner.m11 * inner.m11;
    row.inner_w2 = inner.m21 * inner.m21;
    if (!params.bob_blocks)
        row.eta_nb_closed_form = eta_nb_closed_form(params.outer_count);
    return row;
}

const std::vector<std::string>& csv_columns()
{
    static const std::vector<std::string> columns = {
        "M",  "N",        "kappa1",        "kappa2",        "kappa3", "blocks",
        "w1", "w2",       "w3_total",      "w_res",         "w_tr_entering", "w_tr_absorbed",
        "eta", "eta_nb_closed_form", "inner_w1", "inner_w2"};
    return columns;
}

std::vector<double> SweepAxis::values() const
{
    std::vector<double> v;
    v.reserve(steps);
    if (steps == 1) {
        v.push_back(start);
        return v;
    }
    const double denom = static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) / denom;
        if (spacing == Spacing::linear)
            v.push_back(i + 1 == steps ? stop : start + (stop - start) * t);
        else
            v.push_back(i + 1 == steps ? stop : start * std::pow(stop / start, t));
    }
    return v;
}

void SweepSpec::validate() const
{
    for (const auto& axis : axes) {
        check_param_name(axis.name);
        for (const auto& l : axis.linked)
            check_param_name(l);
        if (axis.steps < 1)
            throw SpecError("axis " + axis.name + ": steps must be >= 1");
        if (!std::isfinite(axis.start) || !std::isfinite(axis.stop))
            throw SpecError("axis " + axis.name + ": endpoints must be finite");
        if (axis.spacing == Spacing::log && !(axis.start > 0.0 && axis.stop > 0.0))
            throw SpecError("axis " + axis.name + ": log spacing needs positive endpoints");
    }
    try {
        fixed.validate();
    } catch (const std::invalid_argument& e) {
        throw SpecError(std::string("fixed parameters: ") + e.what());
    }
}

SweepSpec parse_sweep_spec(std::string_view json_text)
{
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("sweep config is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw SpecError("sweep config must be a JSON object");
    reject_unknown_keys(j, {"axes", "fixed", "balanced", "scenario", "format", "out"}, "sweep config");

    SweepSpec spec;
    if (j.contains("axes")) {
        if (!j["axes"].is_array())
            throw SpecError("'axes' must be an array");
        for (const auto& a : j["axes"]) {
            if (!a.is_object())
                throw SpecError("each axis must be an object");
            reject_unknown_keys(a, {"name", "linked", "start", "stop", "steps", "spacing"}, "axis");
            SweepAxis axis;
            if (!a.contains("name") || !a["name"].is_string())
                throw SpecError("axis needs a string 'name'");
            axis.name = a["name"].get<std::string>();
            if (a.contains("linked")) {
                if (!a["linked"].is_array())
                    throw SpecError("'linked' must be an array of parameter names");
                for (const auto& l : a["linked"]) {
                    if (!l.is_string())
                        throw SpecError("'linked' must be an array of parameter names");
                    axis.linked.push_back(l.get<std::string>());
                }
            }
            axis.start = get_number(a, "start");
            axis.stop = a.contains("stop") ? get_number(a, "stop") : axis.start;
            if (a.contains("steps")) {
                if (!a["steps"].is_number_integer() || a["steps"].get<long long>() < 1)
                    throw SpecError("axis " + axis.name + ": steps must be an integer >= 1");
                axis.steps = a["steps"].get<std::size_t>();
            }
            if (a.contains("spacing"))
                axis.spacing = parse_enum<Spacing>(a["spacing"], "spacing", {{"linear", Spacing::linear}, {"log", Spacing::log}});
            spec.axes.push_back(std::move(axis));
        }
    }
    if (j.contains("fixed")) {
        const auto& f = j["fixed"];
        if (!f.is_object())
            throw SpecError("'fixed' must be an object");
        reject_unknown_keys(f, {"M", "N", "kappa1", "kappa2", "kappa3"}, "fixed");
        for (const auto& item : f.items()) {
            if (!item.value().is_number())
                throw SpecError("fixed parameter '" + item.key() + "' must be a number");
            set_param(spec.fixed, item.key(), item.value().get<double>());
        }
    }
    if (j.contains("balanced")) {
        if (!j["balanced"].is_boolean())
            throw SpecError("'balanced' must be a boolean");
        spec.balanced = j["balanced"].get<bool>();
    }
    if (j.contains("scenario"))
        spec.scenario = parse_enum<Scenario>(j["scenario"], "scenario",
                                             {{"no_blocks", Scenario::no_blocks},
                                              {"with_blocks", Scenario::with_blocks},
                                              {"both", Scenario::both}});
    if (j.contains("format"))
        spec.format = parse_enum<OutputFormat>(j["format"], "format", {{"csv", OutputFormat::csv}, {"json", OutputFormat::json}});
    if (j.contains("out")) {
        if (!j["out"].is_string())
            throw SpecError("'out' must be a string");
        spec.out = j["out"].get<std::string>();
    }
    spec.validate();
    return spec;
}

SweepSpec load_sweep_spec(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read sweep config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sweep_spec(buf.str());
}

std::string sweep_spec_to_json(const SweepSpec& spec)
{
    json j;
    j["axes"] = json::array();
    for (const auto& a : spec.axes) {
        json axis = {{"name", a.name}, {"start", a.start}, {"stop", a.stop}, {"steps", a.steps},
                     {"spacing", to_string(a.spacing)}};
        if (!a.linked.empty())
            axis["linked"] = a.linked;
        j["axes"].push_back(axis);
    }
    j["fixed"] = {{"M", spec.fixed.outer_count},
                  {"N", spec.fixed.inner_count},
                  {"kappa1", spec.fixed.kappa1},
                  {"kappa2", spec.fixed.kappa2},
                  {"kappa3", spec.fixed.kappa3}};
    j["balanced"] = spec.balanced;
    j["scenario"] = to_string(spec.scenario);
    j["format"] = to_string(spec.format);
    j["out"] = spec.out;
    return j.dump(2) + "\n";
}

std::vector<ProtocolParams> expand_sweep(const SweepSpec& spec)
{
    spec.validate();
    std::vector<std::vector<double>> grids;
    grids.reserve(spec.axes.size());
    for (const auto& axis : spec.axes)
        grids.push_back(axis.values());

    std::vector<ProtocolParams> points;
    std::vector<std::size_t> index(grids.size(), 0);
    while (true) {
        ProtocolParams p = spec.fixed;
        for (std::size_t a = 0; a < grids.size(); ++a) {
            const double v = grids[a][index[a]];
            set_param(p, spec.axes[a].name, v);
            for (const auto& l : spec.axes[a].linked)
                set_param(p, l, v);
        }
        if (spec.balanced)
            p.kappa1 = balanced_kappa1(p.inner_count, p.kappa2);
        p.validate();
        if (spec.scenario != Scenario::with_blocks) {
            p.bob_blocks = false;
            points.push_back(p);
        }
        if (spec.scenario != Scenario::no_blocks) {
            p.bob_blocks = true;
            points.push_back(p);
        }

        // Odometer increment, last axis fastest.
        std::size_t a = grids.size();
        while (a > 0) {
            --a;
            if (++index[a] < grids[a].size())
                break;
            index[a] = 0;
            if (a == 0)
                return points;
        }
        if (grids.empty())
            return points;
    }
}

std::vector<ReportRow> run_sweep(const SweepSpec& spec, unsigned threads)
{
    const auto points = expand_sweep(spec);
    std::vector<ReportRow> rows(points.size());
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, points.size())));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++)
            rows[i] = make_row(points[i]);
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    pool.clear();
    return rows;
}

void write_rows(std::ostream& os, std::span<const ReportRow> rows, OutputFormat format)
{
    if (format == OutputFormat::json) {
        json j;
        j["format"] = kFormatVersion;
        j["rows"] = json::array();
        for (const auto& r : rows)
            j["rows"].push_back(row_json(r));
        os << j.dump(2) << '\n';
        return;
    }
    os << "# " << kFormatVersion << '\n';
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        os << (i ? "," : "") << cols[i];
    os << '\n';
    for (const auto& r : rows)
        write_csv_row(os, r);
}

const std::vector<Table1Reference>& table1_reference()
{
    using S = Table1Setting;
    static const std::vector<Table1Reference> ref = {
        {6, 12, S::no_dissipation, 0.62, 0.35},    {6, 12, S::balanced_lossless, 0.36, 0.26},
        {6, 12, S::balanced_lossy, 0.35, 0.26},    {12, 12, S::no_dissipation, 0.37, 0.54},
        {12, 12, S::balanced_lossless, 0.10, 0.27}, {12, 12, S::balanced_lossy, 0.10, 0.27},
        {12, 20, S::no_dissipation, 0.54, 0.43},   {12, 20, S::balanced_lossless, 0.26, 0.28},
        {12, 20, S::balanced_lossy, 0.25, 0.27},   {20, 30, S::no_dissipation, 0.49, 0.46},
        {20, 30, S::balanced_lossless, 0.21, 0.28}, {20, 30, S::balanced_lossy, 0.20, 0.27},
        {20, 50, S::no_dissipation, 0.64, 0.34},   {20, 50, S::balanced_lossless, 0.39, 0.25},
        {20, 50, S::balanced_lossy, 0.36, 0.23},   {30, 50, S::no_dissipation, 0.48, 0.42},
        {30, 50, S::balanced_lossless, 0.24, 0.28}, {30, 50, S::balanced_lossy, 0.21, 0.25},
        {40, 100, S::no_dissipation, 0.63, 0.35},  {40, 100, S::balanced_lossless, 0.38, 0.25},
        {40, 100, S::balanced_lossy, 0.26, 0.20},
    };
    return ref;
}

std::string_view to_string(Table1Setting setting)
{
    switch (setting) {
    case Table1Setting::no_dissipation:
        return "no_dissipation";
    case Table1Setting::balanced_lossless:
        return "balanced_kappa0";
    case Table1Setting::balanced_lossy:
        return "balanced_kappa1e-4";
    }
    return "";
}

ProtocolParams table1_params(const Table1Reference& ref)
{
    ProtocolParams p;
    p.outer_count = ref.outer_count;
    p.inner_count = ref.inner_count;
    p.bob_blocks = true;
    switch (ref.setting) {
    case Table1Setting::no_dissipation:
        break;
    case Table1Setting::balanced_lossless:
        p.kappa1 = balanced_kappa1(ref.inner_count, 0.0);
        break;
    case Table1Setting::balanced_lossy:
        p.kappa2 = p.kappa3 = 1e-4;
        p.kappa1 = balanced_kappa1(ref.inner_count, p.kappa2);
        break;
    }
    return p;
}

double Table1Row::delta_w_tr(bool entering_convention) const
{
    return (entering_convention ? outcome.w_tr : outcome.w_tr_absorbed) - reference.w_tr;
}

Table1Result run_table1()
{
    Table1Result result;
    for (const auto& ref : table1_reference()) {
        Table1Row row{ref, table1_params(ref), {}};
        row.outcome = evaluate(row.params);
        result.max_delta_entering = std::max(result.max_delta_entering, std::abs(row.delta_w_tr(true)));
        result.max_delta_absorbed = std::max(result.max_delta_absorbed, std::abs(row.delta_w_tr(false)));
        result.rows.push_back(std::move(row));
    }
    return result;
}

void write_table1(std::ostream& os, const Table1Result& result, OutputFormat format)
{
    const bool entering = result.entering_matches_better();
    const std::string convention = entering ? "entering_probability" : "absorbed_only";
    if (format == OutputFormat::json) {
        json j;
        j["format"] = kFormatVersion;
        j["w_tr_convention"] = convention;
        j["max_abs_delta_w_tr_entering"] = result.max_delta_entering;
        j["max_abs_delta_w_tr_absorbed"] = result.max_delta_absorbed;
        j["rows"] = json::array();
        for (const auto& r : result.rows) {
            j["rows"].push_back({{"M", r.params.outer_count},
                                 {"N", r.params.inner_count},
                                 {"setting", to_string(r.reference.setting)},
                                 {"kappa1", r.params.kappa1},
                                 {"kappa2", r.params.kappa2},
                                 {"kappa3", r.params.kappa3},
                                 {"w1", r.outcome.w1},
                                 {"w2", r.outcome.w2},
                                 {"w_tr_entering", r.outcome.w_tr},
                                 {"w_tr_absorbed", r.outcome.w_tr_absorbed},
                                 {"reference_w2", r.reference.w2},
                                 {"reference_w_tr", r.reference.w_tr},
                                 {"delta_w2", r.delta_w2()},
                                 {"delta_w_tr", r.delta_w_tr(entering)}});
        }
        os << j.dump(2) << '\n';
        return;
    }
    os << "# " << kFormatVersion << '\n';
    os << "# w_tr_convention=" << convention << " max_abs_delta_entering=" << format_double(result.max_delta_entering)
       << " max_abs_delta_absorbed=" << format_double(result.max_delta_absorbed) << '\n';
    os << "M,N,setting,kappa1,kappa2,kappa3,w1,w2,w_tr_entering,w_tr_absorbed,reference_w2,reference_w_tr,delta_w2,"
          "delta_w_tr\n";
    for (const auto& r : result.rows) {
        os << r.params.outer_count << ',' << r.params.inner_count << ',' << to_string(r.reference.setting) << ','
           << format_double(r.params.kappa1) << ',' << format_double(r.params.kappa2) << ','
           << format_double(r.params.kappa3) << ',' << format_double(r.outcome.w1) << ','
           << format_double(r.outcome.w2) << ',' << format_double(r.outcome.w_tr) << ','
           << format_double(r.outcome.w_tr_absorbed) << ',' << format_double(r.reference.w2) << ','
           << format_double(r.reference.w_tr) << ',' << format_double(r.delta_w2()) << ','
           << format_double(r.delta_w_tr(entering)) << '\n';
    }
}

ReportRow balance_row(std::size_t outer_count, std::size_t inner_count, double kappa2)
{
    ProtocolParams p;
    p.outer_count = outer_count;
    p.inner_count = inner_count;
    p.kappa2 = kappa2;
    p.kappa3 = kappa2;
    p.bob_blocks = true;
    p.validate();
    p.kappa1 = balanced_kappa1(inner_count, kappa2);
    return make_row(p);
}

std::vector<FigureSpec> figure_specs()
{
    auto axis = [](std::string name, double start, double stop, std::size_t steps, Spacing spacing = Spacing::linear,
                   std::vector<std::string> linked = {}) {
        SweepAxis a;
        a.name = std::move(name);
        a.linked = std::move(linked);
        a.start = start;
        a.stop = stop;
        a.steps = steps;
        a.spacing = spacing;
        return a;
    };
    auto fixed = [](std::size_t m, std::size_t n, double k1, double k2, double k3) {
        ProtocolParams p;
        p.outer_count = m;
        p.inner_count = n;
        p.kappa1 = k1;
        p.kappa2 = k2;
        p.kappa3 = k3;
        return p;
    };
    auto make = [](std::string name, std::vector<SweepAxis> axes, ProtocolParams p, Scenario scenario,
                   bool balanced = false) {
        SweepSpec s;
        s.axes = std::move(axes);
        s.fixed = p;
        s.scenario = scenario;
        s.balanced = balanced;
        s.format = OutputFormat::csv;
        s.out = name + ".csv";
        return FigureSpec{std::move(name), std::move(s)};
    };

    std::vector<FigureSpec> figs;
    // Inner chain with balanced loss kappa2 = kappa3.
    figs.push_back(make("fig2a", {axis("kappa2", 0.0, 0.5, 51, Spacing::linear, {"kappa3"})},
                        fixed(6, 12, 0.0, 0.0, 0.0), Scenario::no_blocks));
    // Inner-chain imbalance around kappa3 = 1e-3.
    figs.push_back(make("fig2b", {axis("kappa2", 1e-4, 1e-2, 201, Spacing::log)}, fixed(6, 12, 0.0, 0.0, 1e-3),
                        Scenario::no_blocks));
    figs.push_back(make("fig3a", {axis("M", 2, 40, 39), axis("N", 2, 50, 49)}, fixed(1, 1, 0.0, 0.0, 0.0),
                        Scenario::no_blocks));
    figs.push_back(make("fig3b", {axis("M", 2, 40, 39), axis("N", 2, 50, 49)}, fixed(1, 1, 0.0, 0.0, 0.0),
                        Scenario::with_blocks));
    figs.push_back(make("fig4", {axis("M", 2, 40, 39), axis("N", 2, 200, 199)}, fixed(1, 1, 3e-4, 1e-4, 1e-4),
                        Scenario::with_blocks));
    figs.push_back(make("fig5", {axis("kappa2", 0.0, 0.01, 21), axis("kappa1", 0.1, 0.5, 401)},
                        fixed(6, 12, 0.0, 0.0, 0.0), Scenario::with_blocks));
    return figs;
}

void write_output(const std::string& path, const std::string& content)
{
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out)
        throw IoError("failed writing '" + path + "'");
}

} // namespace zenochain

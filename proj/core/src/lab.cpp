#include "beurlab/lab.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "beurlab/parallel.hpp"
#include "beurlab/rng.hpp"

namespace beurlab {

using nlohmann::json;

void ExperimentConfig::validate() const {
    for (double d : delta_list)
        if (d < 0.0 || d > 0.5) throw std::invalid_argument("config: delta values must lie in [0, 0.5]");
    params.validate();
    if (ladder.empty()) throw std::invalid_argument("config: resolution ladder is empty");
    for (std::size_t i = 1; i < ladder.size(); ++i)
        if (ladder[i].grid_points <= ladder[i - 1].grid_points ||
            ladder[i].whitney_depth < ladder[i - 1].whitney_depth)
            throw std::invalid_argument("config: resolution ladder must be strictly increasing");
    if (count < 1) throw std::invalid_argument("config: count must be positive");
    if (harmonics < 1 || harmonics > 32)
        throw std::invalid_argument("config: harmonics must lie in [1, 32]");
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    validate_config_json(text);
    json j = json::parse(text);
    ExperimentConfig c;
    if (j.contains("family")) {
        const auto& f = j["family"];
        c.family_kind = f.value("kind", c.family_kind);
        if (f.contains("delta_list")) c.delta_list = f["delta_list"].get<std::vector<double>>();
        c.seed = f.value("seed", c.seed);
        c.count = f.value("count", c.count);
        c.harmonics = f.value("harmonics", c.harmonics);
        c.support_radius = f.value("support_radius", c.support_radius);
        c.include_reference_set = f.value("include_reference_set", c.include_reference_set);
    }
    if (j.contains("params")) {
        c.params.alpha = j["params"].value("alpha", c.params.alpha);
        c.params.p = j["params"].value("p", c.params.p);
    }
    if (j.contains("ladder")) {
        c.ladder.clear();
        for (const auto& step : j["ladder"])
            c.ladder.push_back({step.at("grid_points").get<std::size_t>(),
                                step.at("whitney_depth").get<int>()});
    }
    if (j.contains("mc")) {
        c.mc.samples_per_stratum = j["mc"].value("samples_per_stratum", c.mc.samples_per_stratum);
        c.mc.strata_out = j["mc"].value("strata_out", c.mc.strata_out);
        c.mc.points_per_cube = j["mc"].value("points_per_cube", c.mc.points_per_cube);
        c.mc.seed = j["mc"].value("seed", c.mc.seed);
    }
    c.out_dir = j.value("out_dir", c.out_dir);
    c.threads = j.value("threads", c.threads);
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string ExperimentConfig::to_json_text() const {
    json j;
    j["family"] = {{"kind", family_kind},
                   {"delta_list", delta_list},
                   {"seed", seed},
                   {"count", count},
                   {"harmonics", harmonics},
                   {"support_radius", support_radius},
                   {"include_reference_set", include_reference_set}};
    j["params"] = {{"alpha", params.alpha}, {"p", params.p}};
    j["ladder"] = json::array();
    for (const auto& step : ladder)
        j["ladder"].push_back({{"grid_points", step.grid_points}, {"whitney_depth", step.whitney_depth}});
    j["mc"] = {{"samples_per_stratum", mc.samples_per_stratum},
               {"strata_out", mc.strata_out},
               {"points_per_cube", mc.points_per_cube},
               {"seed", mc.seed}};
    j["out_dir"] = out_dir;
    j["threads"] = threads;
    return j.dump(2);
}

void validate_config_json(const std::string& text) {
    json j = json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("config: root must be an object");
    static const char* known[] = {"family", "params", "ladder", "mc", "out_dir", "threads"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw std::invalid_argument("config: unknown key '" + it.key() + "'");
    }
    if (j.contains("ladder")) {
        if (!j["ladder"].is_array()) throw std::invalid_argument("config: ladder must be an array");
        for (const auto& step : j["ladder"])
            if (!step.contains("grid_points") || !step.contains("whitney_depth"))
                throw std::invalid_argument("config: ladder steps need grid_points and whitney_depth");
    }
}

// ---------------------------------------------------------------------------

namespace {

/// Random trig polynomial windowed to compact support, rescaled so the
/// measured max slope lands in [0.9 delta, delta].
LipschitzGraph random_graph(std::uint64_t seed, double delta, int harmonics, double support,
                            std::size_t grid_points) {
    SplitMix64 rng(seed);
    std::vector<double> a(std::size_t(harmonics)), b(std::size_t(harmonics));
    for (int k = 0; k < harmonics; ++k) {
        // sum of two uniforms, centered: cheap symmetric deviate
        a[std::size_t(k)] = (rng.next_double() + rng.next_double() - 1.0) / double(k + 1);
        b[std::size_t(k)] = (rng.next_double() + rng.next_double() - 1.0) / double(k + 1);
    }
    double xmax = 3.0 * support;
    std::vector<double> v(grid_points + 1);
    double h = 2.0 * xmax / double(grid_points);
    for (std::size_t i = 0; i <= grid_points; ++i) {
        double x = -xmax + double(i) * h;
        double w = std::max(0.0, 1.0 - (x / support) * (x / support));
        w *= w;
        double sum = 0.0;
        for (int k = 0; k < harmonics; ++k)
            sum += a[std::size_t(k)] * std::cos(pi * (k + 1) * x / support) +
                   b[std::size_t(k)] * std::sin(pi * (k + 1) * x / support);
        v[i] = sum * w;
    }
    double slope = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        slope = std::max(slope, std::abs(v[i + 1] - v[i]) / h);
    if (delta <= 0.0) {
        std::fill(v.begin(), v.end(), 0.0);
        return LipschitzGraph(-xmax, h, std::move(v), 0.0, support);
    }
    if (slope <= 0.0) throw std::runtime_error("generate_family: degenerate sample (zero slope)");
    double scale = 0.95 * delta / slope;
    for (double& y : v) y *= scale;
    return LipschitzGraph(-xmax, h, std::move(v), delta, support);
}

LipschitzGraph bump_graph(double delta, double support, std::size_t grid_points) {
    double xmax = 3.0 * support;
    double h = 2.0 * xmax / double(grid_points);
    std::vector<double> v(grid_points + 1);
    for (std::size_t i = 0; i <= grid_points; ++i) {
        double x = -xmax + double(i) * h;
        double u = std::max(0.0, 1.0 - (x / support) * (x / support));
        v[i] = u * u;
    }
    double slope = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        slope = std::max(slope, std::abs(v[i + 1] - v[i]) / h);
    for (double& y : v) y *= 0.95 * delta / slope;
    return LipschitzGraph(-xmax, h, std::move(v), delta, support);
}

LipschitzGraph lacunary_graph(double delta, double support, std::size_t grid_points) {
    double xmax = 3.0 * support;
    double h = 2.0 * xmax / double(grid_points);
    std::vector<double> v(grid_points + 1);
    for (std::size_t i = 0; i <= grid_points; ++i) {
        double x = -xmax + double(i) * h;
        double w = std::max(0.0, 1.0 - (x / support) * (x / support));
        w *= w;
        double sum = 0.0;
        for (int k = 0; k < 5; ++k) sum += std::exp2(-1.6 * k) * std::cos(std::exp2(k) * pi * x / support);
        v[i] = sum * w;
    }
    double slope = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        slope = std::max(slope, std::abs(v[i + 1] - v[i]) / h);
    for (double& y : v) y *= 0.95 * delta / slope;
    return LipschitzGraph(-xmax, h, std::move(v), delta, support);
}

PlaneDomain square_domain(double side) {
    return PlaneDomain::polygon({{-0.5 * side, -0.5 * side},
                                 {0.5 * side, -0.5 * side},
                                 {0.5 * side, 0.5 * side},
                                 {-0.5 * side, 0.5 * side}});
}

}  // namespace

std::vector<DomainEntry> generate_family(const ExperimentConfig& config, std::uint64_t seed) {
    config.validate();
    std::vector<DomainEntry> out;
    std::size_t n = config.ladder.back().grid_points;
    if (config.include_reference_set) {
        out.push_back({"ref_half_plane", 0.0, PlaneDomain::half_plane()});
        out.push_back({"ref_disk", 0.0, PlaneDomain::disk({0.0, 0.0}, 1.0)});
        out.push_back({"ref_square", 0.0, square_domain(2.0)});
        double d0 = config.delta_list.empty() ? 0.05 : config.delta_list.front();
        out.push_back({"ref_bump", d0,
                       PlaneDomain::graph(bump_graph(d0, config.support_radius, n))});
        out.push_back({"ref_lacunary", d0,
                       PlaneDomain::graph(lacunary_graph(d0, config.support_radius, n))});
    }
    for (double delta : config.delta_list) {
        for (int i = 0; i < config.count; ++i) {
            std::uint64_t key = seed * 1000003ull + std::uint64_t(i) * 101ull +
                                std::uint64_t(std::llround(delta * 1e6));
            LipschitzGraph g =
                random_graph(key, delta, config.harmonics, config.support_radius, n);
            std::ostringstream id;
            id << "graph_d" << delta << "_i" << i;
            out.push_back({id.str(), delta, PlaneDomain::graph(std::move(g))});
        }
    }
    return out;
}

namespace {

LipschitzGraph resample(const LipschitzGraph& g, std::size_t grid_points) {
    const auto& f = g.function();
    double h = (f.x_max() - f.x_min()) / double(grid_points);
    std::vector<double> v(grid_points + 1);
    for (std::size_t i = 0; i <= grid_points; ++i) v[i] = f(f.x_min() + double(i) * h);
    v.front() = v.back() = 0.0;
    return LipschitzGraph(f.x_min(), h, std::move(v), g.slope_bound(), g.support_radius());
}

struct DomainResult {
    EquivalenceRow row;
};

EquivalenceRow run_one(const PlaneDomain& domain, const std::string& id, double delta,
                       const ExperimentConfig& config, const ResolutionStep& step,
                       const std::string& tag) {
    EquivalenceRow row;
    row.domain_id = id;
    row.delta = delta;
    row.resolution_tag = tag;
    SeminormParams params = config.params;

    // normal seminorm
    NormalBesovReport nb = normal_besov(domain, params);
    row.normal_norm_p = std::pow(nb.report.value, params.p);

    if (domain.as_half_plane()) return row;  // all energies vanish

    // geometry at this resolution
    const PlaneDomain* dom = &domain;
    std::optional<PlaneDomain> resampled;
    Box box;
    if (auto* g = domain.as_graph()) {
        if (g->graph.cell_count() != step.grid_points) {
            resampled = PlaneDomain::graph(resample(g->graph, step.grid_points));
            dom = &*resampled;
        }
        double s = g->graph.support_radius();
        box = Box{-2.0 * s, -0.125 * s, 4.0 * s};
    } else {
        double diam = domain.diameter();
        cplx lo{1e300, 1e300};
        if (auto* pg = domain.as_polygon())
            for (cplx v : pg->vertices)
                lo = {std::min(lo.real(), v.real()), std::min(lo.imag(), v.imag())};
        else
            lo = domain.as_disk()->center - cplx(domain.as_disk()->radius, domain.as_disk()->radius);
        box = Box{lo.real() - 0.25 * diam, lo.imag() - 0.25 * diam, 1.5 * diam};
    }
    WhitneyDecomposition wd = build_whitney(*dom, box, 1, step.whitney_depth);
    BchiEvaluator eval(*dom);

    EnergyReport we = weighted_energy(*dom, params, wd);
    row.weighted = we.cube_sum + we.collar_estimate;
    row.collar_share = row.weighted > 0.0 ? we.collar_estimate / row.weighted : 0.0;

    McBudget mc = config.mc;
    EnergyReport so = frac_sobolev_energy(*dom, params, wd, eval, mc);
    row.frac_sobolev = so.cube_sum + so.collar_estimate;
    EnergyReport be = besov_energy(*dom, params, wd, eval, mc);
    row.besov = be.cube_sum + be.collar_estimate;

    if (row.normal_norm_p > 0.0) {
        row.r1 = row.weighted / row.normal_norm_p;
        row.r2 = row.frac_sobolev / row.normal_norm_p;
        row.r3 = row.besov / row.normal_norm_p;
    }
    return row;
}

}  // namespace

EquivalenceSummary run_equivalence(const ExperimentConfig& config) {
    config.validate();
    if (config.threads > 0) set_thread_count(config.threads);
    std::vector<DomainEntry> domains = generate_family(config, config.seed);

    EquivalenceSummary summary;
    for (const auto& entry : domains) {
        for (std::size_t li = 0; li < config.ladder.size(); ++li) {
            const ResolutionStep& step = config.ladder[li];
            std::ostringstream tag;
            tag << "res" << li << "_n" << step.grid_points << "_d" << step.whitney_depth;
            EquivalenceRow row;
            try {
                row = run_one(entry.domain, entry.id, entry.delta, config, step, tag.str());
            } catch (const std::exception& e) {
                row.domain_id = entry.id;
                row.delta = entry.delta;
                row.resolution_tag = tag.str();
                row.error = e.what();
                ++summary.failures;
            }
            summary.rows.push_back(std::move(row));
        }
    }

    // ratio extrema over non-flat domains at the top resolution + drift
    const std::string top_tag = [&] {
        std::ostringstream tag;
        tag << "res" << (config.ladder.size() - 1) << "_n" << config.ladder.back().grid_points
            << "_d" << config.ladder.back().whitney_depth;
        return tag.str();
    }();
    auto note = [&](const std::string& key, double v) {
        if (v <= 0.0) return;
        auto it = summary.ratio_min.find(key);
        if (it == summary.ratio_min.end()) {
            summary.ratio_min[key] = v;
            summary.ratio_max[key] = v;
        } else {
            it->second = std::min(it->second, v);
            summary.ratio_max[key] = std::max(summary.ratio_max[key], v);
        }
    };
    for (const auto& row : summary.rows) {
        if (!row.error.empty() || row.resolution_tag != top_tag) continue;
        note("r1", row.r1);
        note("r2", row.r2);
        note("r3", row.r3);
    }
    if (config.ladder.size() >= 2) {
        for (const auto& row : summary.rows) {
            if (!row.error.empty() || row.resolution_tag != top_tag || row.r1 <= 0.0) continue;
            for (const auto& prev : summary.rows) {
                if (prev.domain_id != row.domain_id || prev.resolution_tag == top_tag ||
                    !prev.error.empty() || prev.r1 <= 0.0)
                    continue;
                // only compare against the second-from-top rung
                std::ostringstream tag;
                tag << "res" << (config.ladder.size() - 2) << "_n"
                    << config.ladder[config.ladder.size() - 2].grid_points << "_d"
                    << config.ladder[config.ladder.size() - 2].whitney_depth;
                if (prev.resolution_tag != tag.str()) continue;
                for (auto [a, b] : {std::pair{row.r1, prev.r1}, {row.r2, prev.r2}, {row.r3, prev.r3}}) {
                    if (a > 0.0 && b > 0.0)
                        summary.max_resolution_drift =
                            std::max(summary.max_resolution_drift, std::abs(a - b) / a);
                }
            }
        }
    }
    return summary;
}

std::vector<TheoremDomRow> run_theorem_dom(const ExperimentConfig& config,
                                           const std::vector<DomainEntry>& domains) {
    config.validate();
    std::vector<TheoremDomRow> rows;
    for (const auto& entry : domains) {
        TheoremDomRow row;
        row.domain_id = entry.id;
        try {
            if (!entry.domain.is_bounded())
                throw std::invalid_argument("run_theorem_dom: needs bounded domains");
            SeminormParams params = config.params;
            NormalBesovReport nb = normal_besov(entry.domain, params);
            row.lhs = nb.report.value;
            row.h1_term = std::pow(entry.domain.boundary_length(),
                                   -params.alpha + 2.0 / params.p);
            double diam = entry.domain.diameter();
            cplx lo{1e300, 1e300};
            if (auto* pg = entry.domain.as_polygon())
                for (cplx v : pg->vertices)
                    lo = {std::min(lo.real(), v.real()), std::min(lo.imag(), v.imag())};
            else
                lo = entry.domain.as_disk()->center -
                     cplx(entry.domain.as_disk()->radius, entry.domain.as_disk()->radius);
            Box box{lo.real() - 0.25 * diam, lo.imag() - 0.25 * diam, 1.5 * diam};
            WhitneyDecomposition wd = build_whitney(entry.domain, box, 1,
                                                    config.ladder.back().whitney_depth);
            BchiEvaluator eval(entry.domain);
            EnergyReport so = frac_sobolev_energy(entry.domain, params, wd, eval, config.mc);
            row.energy = std::pow(so.cube_sum + so.collar_estimate, 1.0 / params.p);
            row.implied_c = row.lhs / (row.energy + row.h1_term);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void emit_reports(const EquivalenceSummary& summary, const ExperimentConfig& config,
                  const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    {
        std::ofstream csv(out_dir + "/equivalence.csv");
        if (!csv) throw std::runtime_error("emit_reports: cannot write equivalence.csv");
        csv << "domain_id,delta,resolution,normal_norm_p,weighted,frac_sobolev,besov,"
               "r1,r2,r3,collar_share,error\n";
        for (const auto& r : summary.rows)
            csv << r.domain_id << ',' << r.delta << ',' << r.resolution_tag << ','
                << r.normal_norm_p << ',' << r.weighted << ',' << r.frac_sobolev << ',' << r.besov
                << ',' << r.r1 << ',' << r.r2 << ',' << r.r3 << ',' << r.collar_share << ','
                << (r.error.empty() ? "" : "\"" + r.error + "\"") << '\n';
    }
    {
        json j;
        j["config"] = json::parse(config.to_json_text());
        j["failures"] = summary.failures;
        j["max_resolution_drift"] = summary.max_resolution_drift;
        json extrema;
        for (const auto& [k, v] : summary.ratio_min) {
            extrema[k] = {{"min", v},
                          {"max", summary.ratio_max.at(k)},
                          {"log10_spread", std::log10(summary.ratio_max.at(k) / v)}};
        }
        j["ratios"] = extrema;
        std::ofstream js(out_dir + "/summary.json");
        if (!js) throw std::runtime_error("emit_reports: cannot write summary.json");
        js << j.dump(2) << '\n';
    }
    {
        // gnuplot-ready per-domain ratio blocks
        std::ofstream gp(out_dir + "/ratios.dat");
        if (!gp) throw std::runtime_error("emit_reports: cannot write ratios.dat");
        gp << "# domain_id resolution r1 r2 r3\n";
        for (const auto& r : summary.rows)
            if (r.error.empty())
                gp << r.domain_id << ' ' << r.resolution_tag << ' ' << r.r1 << ' ' << r.r2 << ' '
                   << r.r3 << '\n';
    }
}

}  // namespace beurlab

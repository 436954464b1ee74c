#include <complex>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "beurlab/beurling.hpp"
#include "beurlab/beta.hpp"
#include "beurlab/lab.hpp"
#include "beurlab/parallel.hpp"

using namespace beurlab;

namespace {

int cmd_run(const std::string& config_path, const std::string& out_override, int threads) {
    ExperimentConfig config = ExperimentConfig::from_json_file(config_path);
    if (threads > 0) config.threads = threads;
    if (!out_override.empty()) config.out_dir = out_override;
    if (config.threads > 0) set_thread_count(config.threads);
    EquivalenceSummary summary = run_equivalence(config);
    emit_reports(summary, config, config.out_dir);
    std::cout << "rows: " << summary.rows.size() << ", failures: " << summary.failures
              << ", max resolution drift: " << summary.max_resolution_drift << '\n';
    for (const auto& [k, v] : summary.ratio_min)
        std::cout << "  " << k << " in [" << v << ", " << summary.ratio_max.at(k)
                  << "], log10 spread " << std::log10(summary.ratio_max.at(k) / v) << '\n';
    return summary.failures == 0 ? 0 : 2;
}

int cmd_eval(const std::string& domain_path, const std::string& op, double zx, double zy,
             double eps) {
    PlaneDomain domain = PlaneDomain::from_json_file(domain_path);
    cplx z{zx, zy};
    if (eps <= 0.0) eps = 0.25 * dist_to_boundary(domain, z);
    cplx v;
    double err = 1e-9;  // quadrature tolerance of the annulus integrals
    if (op == "bchi")
        v = bchi_area(domain, z, eps);
    else if (op == "dbchi")
        v = dbchi_area(domain, z, eps);
    else if (op == "d2bchi")
        v = d2bchi(domain, z, eps);
    else
        throw CLI::ValidationError("--op must be bchi, dbchi or d2bchi");
    std::cout << v.real() << (v.imag() < 0 ? " - " : " + ") << std::abs(v.imag())
              << "i  (quadrature tol " << err << ")\n";
    return 0;
}

int cmd_beta(const std::string& domain_path, int depth, const std::string& out_csv) {
    PlaneDomain domain = PlaneDomain::from_json_file(domain_path);
    DyadicTree tree = DyadicTree::over_boundary(domain, depth);
    BetaProfile profile = beta_profile(domain, tree);
    profile.write_csv(out_csv);
    std::cout << "wrote " << out_csv << " (" << tree.node_count() << " nodes)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"beurlab: Beurling transforms, beta numbers and Besov seminorms of planar domains"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int threads = 0;
    auto* run = app.add_subcommand("run", "run the equivalence experiment from a JSON config");
    run->add_option("--config", config_path, "config JSON (see core/data/config.schema.json)")
        ->required();
    run->add_option("--out", out_dir, "output directory override");
    run->add_option("--threads", threads, "worker threads (0 = hardware)");

    std::string domain_path, op = "bchi", zspec;
    double eps = 0.0;
    auto* ev = app.add_subcommand("eval", "evaluate Bchi or its derivatives at a point");
    ev->add_option("--domain", domain_path, "domain JSON file")->required();
    ev->add_option("--op", op, "bchi | dbchi | d2bchi");
    ev->add_option("--z", zspec, "point as a,b")->required();
    ev->add_option("--eps", eps, "principal-value cutoff (default dist/4)");

    std::string beta_domain, beta_out = "beta.csv";
    int depth = 6;
    auto* bt = app.add_subcommand("beta", "multiscale beta profile of a domain boundary");
    bt->add_option("--domain", beta_domain, "domain JSON file")->required();
    bt->add_option("--depth", depth, "tree depth");
    bt->add_option("--out", beta_out, "output CSV");

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(config_path, out_dir, threads);
        if (ev->parsed()) {
            auto comma = zspec.find(',');
            if (comma == std::string::npos)
                throw CLI::ValidationError("--z expects the form a,b");
            double zx = std::stod(zspec.substr(0, comma));
            double zy = std::stod(zspec.substr(comma + 1));
            return cmd_eval(domain_path, op, zx, zy, eps);
        }
        if (bt->parsed()) return cmd_beta(beta_domain, depth, beta_out);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

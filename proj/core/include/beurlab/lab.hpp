#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "beurlab/besov.hpp"
#include "beurlab/energies.hpp"
#include "beurlab/plane_domain.hpp"

namespace beurlab {

struct ResolutionStep {
    std::size_t grid_points = 4096;  // samples of A across the window
    int whitney_depth = 9;
};

struct ExperimentConfig {
    // domain family
    std::string family_kind = "graph";  // currently: random compactly supported graphs
    std::vector<double> delta_list{0.05};
    std::uint64_t seed = 7;
    int count = 4;
    int harmonics = 6;          // spectrum cutoff of the trig-polynomial generator
    double support_radius = 1.0;
    bool include_reference_set = true;

    SeminormParams params = SeminormParams{0.6, 3.0, 0.0};
    std::vector<ResolutionStep> ladder{{2048, 8}, {4096, 9}};
    McBudget mc;

    std::string out_dir = ".";
    int threads = 0;

    void validate() const;
    static ExperimentConfig from_json_file(const std::string& path);
    static ExperimentConfig from_json_text(const std::string& text);
    std::string to_json_text() const;
};

struct DomainEntry {
    std::string id;
    double delta = 0.0;
    PlaneDomain domain;
};

/// Reproducible domain family: random trigonometric-polynomial graphs
/// rescaled to the target slope, plus the fixed reference set
/// {half-plane, disk, square, single bump, lacunary graph}.
std::vector<DomainEntry> generate_family(const ExperimentConfig& config, std::uint64_t seed);

struct EquivalenceRow {
    std::string domain_id;
    double delta = 0.0;
    std::string resolution_tag;
    double normal_norm_p = 0.0;       // ||N||^p
    double weighted = 0.0;            // value^p of the weighted derivative energy
    double frac_sobolev = 0.0;        // ||D^alpha Bchi||_p^p
    double besov = 0.0;               // section-6 energy, value^p
    double r1 = 0.0, r2 = 0.0, r3 = 0.0;  // energies / ||N||^p
    double collar_share = 0.0;
    std::string error;  // per-domain failures are isolated
};

struct EquivalenceSummary {
    std::vector<EquivalenceRow> rows;
    std::map<std::string, double> ratio_min, ratio_max;
    double max_resolution_drift = 0.0;  // max relative ratio change between top resolutions
    int failures = 0;
};

EquivalenceSummary run_equivalence(const ExperimentConfig& config);

struct TheoremDomRow {
    std::string domain_id;
    double lhs = 0.0;       // ||N||
    double energy = 0.0;    // ||Bchi||_{W^{alpha,p}} = frac_sobolev^{1/p}
    double h1_term = 0.0;   // H^1(boundary)^{-alpha + 2/p}
    double implied_c = 0.0; // lhs / (energy + h1_term)
    std::string error;
};

/// Both sides of the bounded-domain inequality on polygon families.
std::vector<TheoremDomRow> run_theorem_dom(const ExperimentConfig& config,
                                           const std::vector<DomainEntry>& domains);

/// CSV tables + a JSON summary with all discretization metadata embedded;
/// deterministic output for a fixed config and seed.
void emit_reports(const EquivalenceSummary& summary, const ExperimentConfig& config,
                  const std::string& out_dir);

/// Validates a config JSON against the shipped schema (structural check).
void validate_config_json(const std::string& text);

}  // namespace beurlab

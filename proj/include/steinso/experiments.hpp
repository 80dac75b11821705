#pragma once

#include <string>
#include <vector>

#include "steinso/gof.hpp"
#include "steinso/samplers.hpp"

namespace steinso::experiments {

// ---------------------------------------------------------------------------
// Estimator accuracy: MKSDE vs the two MLE baselines across concentrations.
// ---------------------------------------------------------------------------

struct Fig1Config {
    int dim = 3;
    int n = 500;
    int trials = 20;
    double tau = 1.0;
    std::uint64_t seed = 0;
    std::vector<std::string> f0_labels = {"0.1I", "0.5I", "I",
                                          "5I",   "diag(0.1,0.2,0.3)", "random"};
    int mle_mc_size = 20000;
};

struct Fig1Row {
    std::string f0_label;
    int n = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    std::string method;  // mksde | mle_smallF | mle_numeric
    double frob_error = 0.0;  // NaN marks a per-trial failure
    double runtime_ms = 0.0;
};

struct Fig1Output {
    std::vector<Fig1Row> rows;  // sorted by (label index, trial, method)
    std::vector<std::string> meta;
};

// Ground-truth matrix for a label; "random" draws i.i.d. standard normal
// entries from the stream.
Matrix f0_from_label(const std::string& label, int dim, RngStream& rng);

Fig1Output run_fig1(const Fig1Config& cfg);

// ---------------------------------------------------------------------------
// Goodness-of-fit calibration: Cayley samples tested against the vMF family.
// ---------------------------------------------------------------------------

struct Table1Config {
    int dim = 3;
    int n = 500;
    int trials = 20;
    double tau = 1.0;
    std::uint64_t seed = 0;
    std::vector<double> kappas = {0.2, 0.5, 1.0, 1.5, 2.0};
    std::vector<double> betas = {0.01, 0.05, 0.10};
    int m = 10000;
};

struct Table1Row {
    double kappa = 0.0;
    int n = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    double statistic = 0.0;             // n * m_star
    std::vector<double> quantiles;      // aligned with Table1Config::betas
};

struct Table1Output {
    std::vector<Table1Row> rows;  // sorted by (kappa index, trial)
    std::vector<std::string> meta;
};

Table1Output run_table1(const Table1Config& cfg);

// CSV writers; metadata lines go first, '#'-prefixed, then the header row.
void write_fig1_csv(const std::string& path, const Fig1Output& out);
void write_table1_csv(const std::string& path, const Table1Config& cfg,
                      const Table1Output& out);

}  // namespace steinso::experiments

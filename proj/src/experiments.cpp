#include "steinso/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "steinso/parallel.hpp"
#include "steinso/version.hpp"

namespace steinso::experiments {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string matrix_row_major(const Matrix& m) {
    std::ostringstream os;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i != 0 || j != 0) {
                os << ',';
            }
            os << fmt(m(i, j));
        }
    }
    return os.str();
}

}  // namespace

Matrix f0_from_label(const std::string& label, int dim, RngStream& rng) {
    if (label == "random") {
        Matrix f(dim, dim);
        for (int j = 0; j < dim; ++j) {
            for (int i = 0; i < dim; ++i) {
                f(i, j) = rng.normal();
            }
        }
        return f;
    }
    if (label.size() > 5 && label.substr(0, 5) == "diag(" && label.back() == ')') {
        std::vector<double> vals;
        std::stringstream ss(label.substr(5, label.size() - 6));
        std::string item;
        while (std::getline(ss, item, ',')) {
            vals.push_back(std::stod(item));
        }
        if (static_cast<int>(vals.size()) != dim) {
            throw ValidationError("f0_from_label: diag(...) arity does not match dim");
        }
        Matrix f = Matrix::Zero(dim, dim);
        for (int i = 0; i < dim; ++i) {
            f(i, i) = vals[i];
        }
        return f;
    }
    if (!label.empty() && label.back() == 'I') {
        const std::string scale_str = label.substr(0, label.size() - 1);
        const double scale = scale_str.empty() ? 1.0 : std::stod(scale_str);
        return scale * Matrix::Identity(dim, dim);
    }
    throw ValidationError("f0_from_label: unrecognized label '" + label + "'");
}

Fig1Output run_fig1(const Fig1Config& cfg) {
    if (cfg.trials < 1) {
        throw ValidationError("run_fig1: trials must be >= 1");
    }
    const KernelConfig kcfg{cfg.tau};
    const int labels = static_cast<int>(cfg.f0_labels.size());
    static constexpr const char* kMethods[3] = {"mksde", "mle_smallF", "mle_numeric"};

    Fig1Output out;
    out.meta.push_back(std::string("version=") + kVersion);
    out.meta.push_back("seed=" + std::to_string(cfg.seed));
    out.meta.push_back("tau=" + fmt(cfg.tau));
    out.meta.push_back("config: dim=" + std::to_string(cfg.dim) +
                       " n=" + std::to_string(cfg.n) +
                       " trials=" + std::to_string(cfg.trials) +
                       " mle_mc_size=" + std::to_string(cfg.mle_mc_size));

    std::vector<Matrix> f0s;
    f0s.reserve(labels);
    for (int c = 0; c < labels; ++c) {
        RngStream f0_rng = RngStream::substream(cfg.seed, 999'999'999);
        f0s.push_back(f0_from_label(cfg.f0_labels[c], cfg.dim, f0_rng));
        if (cfg.f0_labels[c] == "random") {
            out.meta.push_back("f0_random_row_major=" + matrix_row_major(f0s.back()));
        }
    }

    out.rows.resize(static_cast<std::size_t>(labels) * cfg.trials * 3);
    parallel_for(labels * cfg.trials, [&](int slot) {
        const int c = slot / cfg.trials;
        const int t = slot % cfg.trials;
        const std::uint64_t trial_seed =
            subseed(cfg.seed, static_cast<std::uint64_t>(c) * 1'000'000 + t);
        RngStream sample_rng(trial_seed);
        const std::vector<Rotation> samples = sample_vmf(VmfParams{f0s[c]}, cfg.n, sample_rng);
        const WeightedSamples ws(samples);
        for (int mi = 0; mi < 3; ++mi) {
            Fig1Row row;
            row.f0_label = cfg.f0_labels[c];
            row.n = cfg.n;
            row.trial = t;
            row.seed = trial_seed;
            row.method = kMethods[mi];
            const auto start = std::chrono::steady_clock::now();
            try {
                Matrix estimate;
                if (mi == 0) {
                    estimate = std::get<VmfParams>(mksde_vmf(ws, kcfg).params).f;
                } else if (mi == 1) {
                    estimate = mle_vmf_smallF(samples).params.f;
                } else {
                    RngStream mle_rng = RngStream::substream(trial_seed, 7);
                    estimate = mle_vmf_numeric(samples, cfg.mle_mc_size, mle_rng).f;
                }
                row.frob_error = (estimate - f0s[c]).norm();
            } catch (const std::exception&) {
                row.frob_error = std::numeric_limits<double>::quiet_NaN();
            }
            row.runtime_ms = elapsed_ms(start);
            out.rows[static_cast<std::size_t>(slot) * 3 + mi] = std::move(row);
        }
    });
    return out;
}

Table1Output run_table1(const Table1Config& cfg) {
    if (cfg.trials < 1) {
        throw ValidationError("run_table1: trials must be >= 1");
    }
    const KernelConfig kcfg{cfg.tau};
    const int kappas = static_cast<int>(cfg.kappas.size());

    Table1Output out;
    out.meta.push_back(std::string("version=") + kVersion);
    out.meta.push_back("seed=" + std::to_string(cfg.seed));
    out.meta.push_back("tau=" + fmt(cfg.tau));
    {
        std::ostringstream os;
        os << "config: dim=" << cfg.dim << " n=" << cfg.n << " trials=" << cfg.trials
           << " m=" << cfg.m << " kappas=";
        for (std::size_t i = 0; i < cfg.kappas.size(); ++i) {
            os << (i ? "," : "") << fmt(cfg.kappas[i]);
        }
        os << " betas=";
        for (std::size_t i = 0; i < cfg.betas.size(); ++i) {
            os << (i ? "," : "") << fmt(cfg.betas[i]);
        }
        out.meta.push_back(os.str());
    }

    out.rows.resize(static_cast<std::size_t>(kappas) * cfg.trials);
    parallel_for(kappas * cfg.trials, [&](int slot) {
        const int c = slot / cfg.trials;
        const int t = slot % cfg.trials;
        const std::uint64_t trial_seed =
            subseed(cfg.seed, static_cast<std::uint64_t>(c) * 1'000'000 + t);
        RngStream sample_rng(trial_seed);
        const CayleyParams cayley{Rotation::identity(cfg.dim), cfg.kappas[c]};
        const std::vector<Rotation> samples = sample_cayley(cayley, cfg.n, sample_rng);

        const WeightedSamples ws(samples);
        const EstimateReport fit = mksde_vmf(ws, kcfg);
        const SteinKernelFn kernel =
            make_vmf_kernel(std::get<VmfParams>(fit.params), kcfg);

        Table1Row row;
        row.kappa = cfg.kappas[c];
        row.n = cfg.n;
        row.trial = t;
        row.seed = trial_seed;
        row.statistic = static_cast<double>(cfg.n) * fit.objective;

        const Matrix gram = gram_matrix(samples, kernel);
        Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
        Vector lambdas = es.eigenvalues().cwiseMax(0.0);
        lambdas.reverseInPlace();
        row.quantiles.reserve(cfg.betas.size());
        for (double beta : cfg.betas) {
            row.quantiles.push_back(
                weighted_chisq_quantile(lambdas, cfg.m, beta, subseed(trial_seed, 2)));
        }
        out.rows[slot] = std::move(row);
    });
    return out;
}

void write_fig1_csv(const std::string& path, const Fig1Output& out) {
    std::ofstream file(path);
    if (!file) {
        throw Error("write_fig1_csv: cannot open " + path);
    }
    for (const std::string& line : out.meta) {
        file << "# " << line << "\n";
    }
    file << "f0_label,n,trial,seed,method,frob_error,runtime_ms\n";
    for (const Fig1Row& row : out.rows) {
        file << row.f0_label << ',' << row.n << ',' << row.trial << ',' << row.seed
             << ',' << row.method << ',' << fmt(row.frob_error) << ','
             << fmt(row.runtime_ms) << "\n";
    }
}

void write_table1_csv(const std::string& path, const Table1Config& cfg,
                      const Table1Output& out) {
    std::ofstream file(path);
    if (!file) {
        throw Error("write_table1_csv: cannot open " + path);
    }
    for (const std::string& line : out.meta) {
        file << "# " << line << "\n";
    }
    file << "kappa,n,trial,seed,statistic";
    for (double beta : cfg.betas) {
        file << ",quantile_b" << fmt(beta);
    }
    file << "\n";
    for (const Table1Row& row : out.rows) {
        file << fmt(row.kappa) << ',' << row.n << ',' << row.trial << ',' << row.seed
             << ',' << fmt(row.statistic);
        for (double q : row.quantiles) {
            file << ',' << fmt(q);
        }
        file << "\n";
    }
}

}  // namespace steinso::experiments

#include "nmland/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nmland/analysis.hpp"
#include "nmland/builders.hpp"
#include "nmland/parallel.hpp"
#include "nmland/serialize.hpp"
#include "nmland/stats.hpp"

namespace nmland {

namespace {

namespace fs = std::filesystem;

std::string format_short(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", value);
    return buf;
}

std::string csv_cell(double value) {
    if (std::isnan(value)) return "";  // unknown statistic
    return format_double(value);
}

// Buffers rows and writes the finished file in one pass; the first line
// embeds the resolved spec so every data file is self-describing.
class CsvFile {
public:
    CsvFile(std::string name, const std::string& spec_json, const std::string& header)
        : name_(std::move(name)) {
        body_ << "# spec: " << spec_json << "\n" << header << "\n";
    }

    std::ostringstream& out() { return body_; }

    const std::string& write_to(const fs::path& dir) {
        std::ofstream file(dir / name_, std::ios::binary);
        if (!file) throw std::runtime_error("cannot write " + (dir / name_).string());
        file << body_.str();
        return name_;
    }

private:
    std::string name_;
    std::ostringstream body_;
};

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return Rng::substream(base, stream).next();
}

std::string iso_timestamp() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

struct Resolved {
    ExperimentSpec spec;
    fs::path dir;
};

void write_meta(const Resolved& r, const std::vector<std::string>& files) {
    std::ostringstream out;
    out << "{\n  \"id\": \"" << r.spec.id << "\",\n";
    out << "  \"version\": \"" << kVersion << "\",\n";
    out << "  \"timestamp\": \"" << iso_timestamp() << "\",\n";
    out << "  \"spec\": " << spec_to_json(r.spec) << ",\n";
    out << "  \"files\": [";
    for (std::size_t i = 0; i < files.size(); ++i)
        out << (i ? ", " : "") << "\"" << files[i] << "\"";
    out << "]\n}\n";
    write_file((r.dir / (r.spec.id + "_meta.json")).string(), out.str());
}

// ---- fig2 / fig3: full second-order models, fitness distributions ----

std::vector<std::string> run_histograms(const Resolved& r, bool uniform_coeffs) {
    const ExperimentSpec& spec = r.spec;
    const std::string spec_json = spec_to_json(spec);
    CsvFile hist(spec.id + "_histograms.csv", spec_json,
                 "sigma,replicate,bin,bin_lo,bin_hi,count");
    CsvFile fits(spec.id + "_fitnesses.csv", spec_json, "sigma,replicate,point,fitness");
    CsvFile shape(spec.id + "_shape.csv", spec_json,
                  "sigma,replicate,mean,stddev,skewness,min,max");

    const int order = spec.orders.empty() ? 2 : spec.orders.front();
    std::uint64_t stream = 0;
    for (double sigma : spec.sigmas) {
        for (int rep = 0; rep < spec.replicates; ++rep, ++stream) {
            InteractionModel m =
                build_type1_complete(spec.n, order, sigma, derive_seed(spec.seed, stream));
            if (uniform_coeffs)
                m = resample_coefficients_uniform(m, derive_seed(spec.seed, stream ^ 0xffffull));
            const EvaluatedLandscape el = enumerate(m, spec.budget);
            const Histogram h = fitness_histogram(el, spec.histogram_bins);
            const std::string sigma_cell = uniform_coeffs ? "uniform" : format_short(sigma);
            const double width = (h.hi - h.lo) / h.counts.size();
            for (std::size_t b = 0; b < h.counts.size(); ++b)
                hist.out() << sigma_cell << ',' << rep << ',' << b << ','
                           << format_double(h.lo + width * b) << ','
                           << format_double(h.lo + width * (b + 1)) << ',' << h.counts[b] << "\n";
            for (std::uint64_t g = 0; g < el.size(); ++g)
                fits.out() << sigma_cell << ',' << rep << ',' << g << ','
                           << format_double(el.fitness[g]) << "\n";
            shape.out() << sigma_cell << ',' << rep << ',' << csv_cell(mean(el.fitness)) << ','
                        << csv_cell(sample_stddev(el.fitness)) << ','
                        << csv_cell(skewness(el.fitness)) << ',' << format_double(h.lo) << ','
                        << format_double(h.hi) << "\n";
        }
        if (uniform_coeffs) break;  // sigma plays no role
    }
    return {hist.write_to(r.dir), fits.write_to(r.dir), shape.write_to(r.dir)};
}

// ---- fig4: incremental term schedules, peaks and walk autocorrelation ----

std::vector<std::string> run_ruggedness_schedule(const Resolved& r) {
    const ExperimentSpec& spec = r.spec;
    struct Row {
        int kind;
        double sigma;
        int replicate, step, m, max_order, peaks;
        double autocorr;
    };
    const std::vector<int> kinds = {1, 2};
    const std::uint64_t jobs =
        kinds.size() * spec.sigmas.size() * static_cast<std::uint64_t>(spec.replicates);
    std::vector<std::vector<Row>> rows(jobs);

    enumeration_point_count(spec.n, 2);  // validate up front
    parallel_for(0, jobs, spec.workers, [&](std::uint64_t job) {
        const int kind = kinds[job / (spec.sigmas.size() * spec.replicates)];
        const std::uint64_t rest = job % (spec.sigmas.size() * spec.replicates);
        const double sigma = spec.sigmas[rest / spec.replicates];
        const int rep = static_cast<int>(rest % spec.replicates);

        const std::uint64_t model_seed = derive_seed(spec.seed, job * 3);
        const InteractionModel master =
            kind == 1 ? build_type1_master(spec.n, sigma, model_seed)
                      : build_type2(spec.n, spec.n, sigma, model_seed);
        Rng schedule_rng = Rng::substream(spec.seed, job * 3 + 1);
        Rng walk_rng = Rng::substream(spec.seed, job * 3 + 2);

        // one fitness table, extended in place as terms arrive
        EvaluatedLandscape el;
        bool first = true;
        int step = 0;
        visit_subset_schedule(master, schedule_rng, 10,
                              [&](const InteractionModel& current, std::span<const Term> added) {
                                  if (first) {
                                      el = enumerate(current, spec.budget);
                                      first = false;
                                  } else {
                                      accumulate_terms(el, master.alphabet, added);
                                  }
                                  const int peaks = count_local_peaks(el);
                                  const double ac =
                                      mean_walk_autocorrelation(el, WalkParams{}, walk_rng);
                                  rows[job].push_back(Row{kind, sigma, rep, step++,
                                                          current.term_count(),
                                                          current.max_order(), peaks, ac});
                              });
    });

    CsvFile csv(spec.id + "_schedule.csv", spec_to_json(spec),
                "kind,n,sigma,replicate,step,m,max_order,peak_count,lag1_autocorr");
    for (const auto& job_rows : rows)
        for (const Row& row : job_rows)
            csv.out() << "type" << row.kind << ',' << spec.n << ',' << format_short(row.sigma)
                      << ',' << row.replicate << ',' << row.step << ',' << row.m << ','
                      << row.max_order << ',' << row.peaks << ',' << csv_cell(row.autocorr)
                      << "\n";
    return {csv.write_to(r.dir)};
}

// ---- fig5/6: fitness vs distance-to-optimum profiles ----

std::vector<std::string> run_profiles(const Resolved& r) {
    const ExperimentSpec& spec = r.spec;
    const double sigma = spec.sigmas.front();
    CsvFile csv(spec.id + "_profiles.csv", spec_to_json(spec),
                "kind,m_order,replicate,point,distance,fitness,is_peak");
    for (int kind : {1, 2}) {
        for (int rep = 0; rep < spec.replicates; ++rep) {
            // same seed across orders: lower-order models share coefficients
            const std::uint64_t model_seed =
                derive_seed(spec.seed, static_cast<std::uint64_t>(kind) * 1000 + rep);
            for (int order : spec.orders) {
                if (order > spec.n) continue;
                const InteractionModel m =
                    kind == 1 ? build_type1_complete(spec.n, order, sigma, model_seed)
                              : build_type2(spec.n, order, sigma, model_seed);
                const EvaluatedLandscape el = enumerate(m, spec.budget);
                for (const ProfileEntry& e : distance_profile(el))
                    csv.out() << "type" << kind << ',' << order << ',' << rep << ',' << e.index
                              << ',' << e.distance << ',' << format_double(e.fitness) << ','
                              << (e.is_peak ? 1 : 0) << "\n";
            }
        }
    }
    return {csv.write_to(r.dir)};
}

// ---- fig7: basin of attraction vs interaction order ----

std::vector<std::string> run_basins(const Resolved& r) {
    const ExperimentSpec& spec = r.spec;
    const double sigma = spec.sigmas.front();
    struct Job {
        std::string family;
        int param;  // max order for NM families, k for NK
        int replicate;
    };
    std::vector<Job> jobs;
    for (int order : spec.orders) {
        if (order > spec.n) continue;
        for (int rep = 0; rep < spec.replicates; ++rep) jobs.push_back({"type1", order, rep});
        // order 1 has no unique maximum for this family (even-indexed
        // features are inert), so the basin statistic starts at order 2
        if (order >= 2)
            for (int rep = 0; rep < spec.replicates; ++rep) jobs.push_back({"type2", order, rep});
        if (order - 1 <= spec.n - 1)
            for (int rep = 0; rep < spec.replicates; ++rep)
                jobs.push_back({"nk", order - 1, rep});
    }

    struct Row {
        double basin = 0.0, membership = 0.0;
        int peaks = 0;
    };
    std::vector<Row> rows(jobs.size());
    parallel_for(0, jobs.size(), spec.workers, [&](std::uint64_t i) {
        const Job& job = jobs[i];
        // nested coefficients: one seed per (family, replicate)
        const std::uint64_t family_tag = job.family == "type1" ? 1 : job.family == "type2" ? 2 : 3;
        const std::uint64_t model_seed =
            derive_seed(spec.seed, family_tag * 100000 + static_cast<std::uint64_t>(job.replicate));
        EvaluatedLandscape el;
        if (job.family == "type1")
            el = enumerate(build_type1_complete(spec.n, job.param, sigma, model_seed), spec.budget);
        else if (job.family == "type2")
            el = enumerate(build_type2(spec.n, job.param, sigma, model_seed), spec.budget);
        else
            el = enumerate(generate_nk(spec.n, job.param,
                                       derive_seed(model_seed, static_cast<std::uint64_t>(job.param))),
                           spec.budget);
        rows[i].basin = basin_fraction(el);
        rows[i].membership = basin_fraction_membership(el);
        rows[i].peaks = count_local_peaks(el);
    });

    CsvFile csv(spec.id + "_basins.csv", spec_to_json(spec),
                "family,param,replicate,basin_fraction,basin_membership,peak_count");
    for (std::size_t i = 0; i < jobs.size(); ++i)
        csv.out() << jobs[i].family << ',' << jobs[i].param << ',' << jobs[i].replicate << ','
                  << format_double(rows[i].basin) << ',' << format_double(rows[i].membership)
                  << ',' << rows[i].peaks << "\n";
    return {csv.write_to(r.dir)};
}

// ---- GA sweeps (fig8/9, fig10/11, fig12) ----

struct SweepPoint {
    std::string label;     // e.g. "p0.3" or "M3"
    double param = 0.0;
    std::vector<InteractionModel> models;
};

std::vector<std::string> write_ga_outputs(const Resolved& r, const GaConfig& config,
                                          std::vector<SweepPoint>& points,
                                          const std::string& param_name) {
    const ExperimentSpec& spec = r.spec;
    const std::string spec_json = spec_to_json(spec);
    CsvFile runs(spec.id + "_ga_runs.csv", spec_json,
                 param_name +
                     ",landscape,seed,generation,best_raw,best_by_max,best_minmax,"
                     "distance_to_opt,found_global");
    CsvFile gens(spec.id + "_generation_summary.csv", spec_json,
                 param_name +
                     ",generation,mean_best_raw,std_best_raw,mean_best_by_max,std_best_by_max,"
                     "mean_best_minmax,std_best_minmax");
    CsvFile sweep(spec.id + "_sweep_summary.csv", spec_json,
                  param_name +
                      ",runs,success_proportion,mean_fail_distance,std_fail_distance,"
                      "final_mean_best_raw,final_mean_best_by_max,final_mean_best_minmax");

    for (std::size_t p = 0; p < points.size(); ++p) {
        SweepPoint& point = points[p];
        const GaSweepResult result =
            ga_sweep(point.models, config, derive_seed(spec.seed, 0xa500 + p), spec.workers);

        std::vector<SearchTrace> flat;
        for (const auto& row : result.traces)
            for (const SearchTrace& t : row) flat.push_back(t);

        for (std::size_t l = 0; l < flat.size(); ++l) {
            const SearchTrace& t = flat[l];
            for (std::size_t g = 0; g < t.by_generation.size(); ++g) {
                const GenerationStat& stat = t.by_generation[g];
                runs.out() << point.label << ',' << point.label << "_rep" << l << ',' << t.seed
                           << ',' << g << ',' << format_double(stat.best_raw) << ','
                           << format_double(stat.best_by_max) << ',' << csv_cell(stat.best_minmax)
                           << ',' << stat.distance_to_optimum << ',' << (stat.found_global ? 1 : 0)
                           << "\n";
            }
        }

        const GaModelSummary all = summarize_runs(flat);
        for (std::size_t g = 0; g < all.mean_best_raw.size(); ++g)
            gens.out() << point.label << ',' << g << ',' << csv_cell(all.mean_best_raw[g]) << ','
                       << csv_cell(all.std_best_raw[g]) << ',' << csv_cell(all.mean_best_by_max[g])
                       << ',' << csv_cell(all.std_best_by_max[g]) << ','
                       << csv_cell(all.mean_best_minmax[g]) << ','
                       << csv_cell(all.std_best_minmax[g]) << "\n";
        sweep.out() << point.label << ',' << all.runs << ','
                    << format_double(all.success_proportion) << ','
                    << csv_cell(all.mean_fail_distance) << ',' << csv_cell(all.std_fail_distance)
                    << ',' << csv_cell(all.mean_best_raw.back()) << ','
                    << csv_cell(all.mean_best_by_max.back()) << ','
                    << csv_cell(all.mean_best_minmax.back()) << "\n";
        point.models.clear();  // large models are no longer needed
    }
    return {runs.write_to(r.dir), gens.write_to(r.dir), sweep.write_to(r.dir)};
}

std::vector<std::string> run_p_sweep(const Resolved& r) {
    const ExperimentSpec& spec = r.spec;
    const double sigma = spec.sigmas.front();
    GaConfig config;
    config.runs = 1;  // one seeded run per random landscape
    std::vector<SweepPoint> points;
    for (std::size_t i = 0; i < spec.proportions.size(); ++i) {
        const double p = spec.proportions[i];
        SweepPoint point;
        point.label = "p" + format_short(p);
        point.param = p;
        for (int rep = 0; rep < spec.replicates; ++rep)
            point.models.push_back(build_type1_proportion(
                spec.n, p, sigma, derive_seed(spec.seed, i * 1000 + rep)));
        points.push_back(std::move(point));
    }
    return write_ga_outputs(r, config, points, "p");
}

std::vector<SweepPoint> type3_sweep_points(const ExperimentSpec& spec, double sigma) {
    std::vector<SweepPoint> points;
    for (std::size_t i = 0; i < spec.orders.size(); ++i) {
        const int order = spec.orders[i];
        SweepPoint point;
        point.label = "M" + std::to_string(order);
        point.param = order;
        for (int rep = 0; rep < spec.replicates; ++rep)
            point.models.push_back(
                build_type3(spec.n, order, sigma, derive_seed(spec.seed, i * 1000 + rep)));
        points.push_back(std::move(point));
    }
    return points;
}

std::vector<std::string> run_m_sweep(const Resolved& r) {
    GaConfig config;
    config.runs = 1;
    std::vector<SweepPoint> points = type3_sweep_points(r.spec, r.spec.sigmas.front());
    return write_ga_outputs(r, config, points, "m_order");
}

// Same runs under the two normalizations; the generation summary carries the
// by-max and range-normalized columns side by side, which is the comparison.
std::vector<std::string> run_norm_compare(const Resolved& r) {
    GaConfig config;
    config.runs = 1;
    std::vector<SweepPoint> points = type3_sweep_points(r.spec, r.spec.sigmas.front());
    return write_ga_outputs(r, config, points, "m_order");
}

// ---- fig1: NK peak counts ----

std::vector<std::string> run_nk_peaks(const Resolved& r) {
    const ExperimentSpec& spec = r.spec;
    struct Row {
        int k, replicate, peaks;
        std::uint64_t seed;
    };
    std::vector<Row> rows;
    for (int k : spec.orders)
        for (int rep = 0; rep < spec.replicates; ++rep)
            rows.push_back(Row{k, rep, 0, derive_seed(spec.seed, static_cast<std::uint64_t>(k) * 1000 + rep)});

    parallel_for(0, rows.size(), spec.workers, [&](std::uint64_t i) {
        const EvaluatedLandscape el = enumerate(generate_nk(spec.n, rows[i].k, rows[i].seed), spec.budget);
        rows[i].peaks = count_local_peaks(el);
    });

    CsvFile csv(spec.id + "_nk_peaks.csv", spec_to_json(spec), "k,replicate,seed,peak_count");
    CsvFile summary(spec.id + "_nk_peaks_summary.csv", spec_to_json(spec),
                    "k,mean_peak_count,std_peak_count");
    for (const Row& row : rows)
        csv.out() << row.k << ',' << row.replicate << ',' << row.seed << ',' << row.peaks << "\n";
    for (int k : spec.orders) {
        std::vector<double> peaks;
        for (const Row& row : rows)
            if (row.k == k) peaks.push_back(row.peaks);
        summary.out() << k << ',' << csv_cell(mean(peaks)) << ',' << csv_cell(sample_stddev(peaks))
                      << "\n";
    }
    return {csv.write_to(r.dir), summary.write_to(r.dir)};
}

// ---- registry ----

struct Defaults {
    int n;
    int replicates;
    std::vector<double> sigmas;
    std::vector<int> orders;
    std::vector<double> proportions;
};

Defaults defaults_for(const std::string& id) {
    if (id == "fig2_histograms") return {10, 1, {1, 10, 100}, {2}, {}};
    if (id == "fig3_uniform_histograms") return {10, 1, {1}, {2}, {}};
    if (id == "fig4_ruggedness_schedule") return {10, 100, {10}, {}, {}};
    if (id == "fig5_6_profiles") return {10, 1, {10}, {1, 2, 3, 4, 6, 10}, {}};
    if (id == "fig7_basins") return {10, 30, {10}, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, {}};
    if (id == "fig8_9_p_sweep")
        return {32, 32, {32}, {}, {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}};
    if (id == "fig10_11_m_sweep") return {32, 32, {32}, {1, 3, 5}, {}};
    if (id == "fig12_norm_compare") return {32, 32, {32}, {3}, {}};
    if (id == "fig1_nk_peaks") return {10, 10, {}, {1, 2, 3, 4, 5, 6, 7, 8, 9}, {}};
    throw std::invalid_argument("unknown experiment id: " + id);
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
    static const std::vector<std::string> ids = {
        "fig1_nk_peaks",       "fig2_histograms",    "fig3_uniform_histograms",
        "fig4_ruggedness_schedule", "fig5_6_profiles", "fig7_basins",
        "fig8_9_p_sweep",      "fig10_11_m_sweep",   "fig12_norm_compare",
    };
    return ids;
}

std::string spec_to_json(const ExperimentSpec& spec) {
    std::ostringstream out;
    out << "{\"id\": \"" << spec.id << "\", \"n\": " << spec.n << ", \"sigmas\": [";
    for (std::size_t i = 0; i < spec.sigmas.size(); ++i)
        out << (i ? ", " : "") << format_short(spec.sigmas[i]);
    out << "], \"replicates\": " << spec.replicates << ", \"seed\": " << spec.seed
        << ", \"budget\": " << spec.budget;
    if (!spec.proportions.empty()) {
        out << ", \"proportions\": [";
        for (std::size_t i = 0; i < spec.proportions.size(); ++i)
            out << (i ? ", " : "") << format_short(spec.proportions[i]);
        out << "]";
    }
    if (!spec.orders.empty()) {
        out << ", \"orders\": [";
        for (std::size_t i = 0; i < spec.orders.size(); ++i)
            out << (i ? ", " : "") << spec.orders[i];
        out << "]";
    }
    out << ", \"histogram_bins\": " << spec.histogram_bins << "}";
    return out.str();
}

std::vector<std::string> run_experiment(const ExperimentSpec& spec) {
    const Defaults d = defaults_for(spec.id);
    Resolved r;
    r.spec = spec;
    if (r.spec.n <= 0) r.spec.n = d.n;
    if (r.spec.replicates <= 0) r.spec.replicates = d.replicates;
    if (r.spec.sigmas.empty()) r.spec.sigmas = d.sigmas;
    if (r.spec.orders.empty()) r.spec.orders = d.orders;
    if (r.spec.proportions.empty()) r.spec.proportions = d.proportions;
    r.dir = fs::path(spec.outdir);
    fs::create_directories(r.dir);

    std::vector<std::string> files;
    if (spec.id == "fig2_histograms") files = run_histograms(r, false);
    else if (spec.id == "fig3_uniform_histograms") files = run_histograms(r, true);
    else if (spec.id == "fig4_ruggedness_schedule") files = run_ruggedness_schedule(r);
    else if (spec.id == "fig5_6_profiles") files = run_profiles(r);
    else if (spec.id == "fig7_basins") files = run_basins(r);
    else if (spec.id == "fig8_9_p_sweep") files = run_p_sweep(r);
    else if (spec.id == "fig10_11_m_sweep") files = run_m_sweep(r);
    else if (spec.id == "fig12_norm_compare") files = run_norm_compare(r);
    else if (spec.id == "fig1_nk_peaks") files = run_nk_peaks(r);
    else throw std::invalid_argument("unknown experiment id: " + spec.id);

    write_meta(r, files);
    return files;
}

}  // namespace nmland

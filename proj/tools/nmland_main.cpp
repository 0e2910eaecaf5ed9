// Command-line front end: landscape generation, analysis, NK and Walsh
// utilities, GA search, and the experiment runners.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nmland/analysis.hpp"
#include "nmland/builders.hpp"
#include "nmland/enumerate.hpp"
#include "nmland/experiments.hpp"
#include "nmland/search.hpp"
#include "nmland/serialize.hpp"
#include "nmland/stats.hpp"
#include "nmland/walsh.hpp"

namespace {

using namespace nmland;

constexpr int kExitOk = 0;
constexpr int kExitUserError = 1;
constexpr int kExitBudget = 2;

Alphabet parse_alphabet(const std::string& text) {
    std::istringstream in(text);
    std::string a, b, arity;
    if (!std::getline(in, a, ',') || !std::getline(in, b, ',') || !std::getline(in, arity))
        throw CLI::ValidationError("--alphabet expects a,b,arity (arity may be 'real')");
    Alphabet alphabet;
    alphabet.a = std::stod(a);
    alphabet.b = std::stod(b);
    alphabet.arity = (arity == "real") ? Alphabet::kRealArity : std::stoi(arity);
    alphabet.validate();
    return alphabet;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") std::cout << text;
    else write_file(out_path, text);
}

std::string file_stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

// ---- gen ----

struct GenOptions {
    int type = 1;
    int n = 10;
    int m_order = -1;
    double sigma = 10.0;
    std::uint64_t seed = 1;
    double proportion = -1.0;
    std::string alphabet;
    bool constant = false;
    std::string out;
};

void run_gen(const GenOptions& opt) {
    BuildOptions build;
    if (!opt.alphabet.empty()) build.alphabet = parse_alphabet(opt.alphabet);
    build.include_constant = opt.constant;

    InteractionModel m;
    switch (opt.type) {
        case 1:
            if (opt.proportion >= 0.0)
                m = build_type1_proportion(opt.n, opt.proportion, opt.sigma, opt.seed, build);
            else
                m = build_type1_complete(opt.n, opt.m_order > 0 ? opt.m_order : opt.n, opt.sigma,
                                         opt.seed, build);
            break;
        case 2:
            if (!opt.alphabet.empty() && (build.alphabet.a != 1.0 || build.alphabet.b != 1.0))
                throw CLI::ValidationError("type 2 landscapes use the fixed range [-1, 1]; "
                                           "--alphabet may only change the arity");
            m = build_type2(opt.n, opt.m_order > 0 ? opt.m_order : opt.n, opt.sigma, opt.seed,
                            opt.alphabet.empty() ? 2 : build.alphabet.arity, opt.constant);
            break;
        case 3: {
            const int order = opt.m_order > 0 ? opt.m_order : (opt.n % 2 == 1 ? opt.n : opt.n - 1);
            m = build_type3(opt.n, order, opt.sigma, opt.seed, build.alphabet);
            break;
        }
        default:
            throw CLI::ValidationError("--type must be 1, 2 or 3");
    }
    emit(opt.out, to_document(m));
}

// ---- analyze ----

struct AnalyzeOptions {
    std::string file;
    bool extremes = false, peaks = false, autocorr = false, basin = false;
    bool histogram = false, profile = false, all = false;
    int bins = 30;
    int walks = 10;
    int steps = 10000;
    std::uint64_t seed = 0;
    std::uint64_t budget = kDefaultEnumerationBudget;
    std::string out_prefix;
};

void write_histogram_csv(const std::string& path, const std::string& id, const Histogram& h) {
    std::ostringstream out;
    out << "landscape,bin,bin_lo,bin_hi,count\n";
    const double width = (h.hi - h.lo) / h.counts.size();
    for (std::size_t b = 0; b < h.counts.size(); ++b)
        out << id << ',' << b << ',' << format_double(h.lo + width * b) << ','
            << format_double(h.lo + width * (b + 1)) << ',' << h.counts[b] << "\n";
    write_file(path, out.str());
}

void write_profile_csv(const std::string& path, const std::string& id,
                       const std::vector<ProfileEntry>& profile) {
    std::ostringstream out;
    out << "landscape,point,distance,fitness,is_peak\n";
    for (const ProfileEntry& e : profile)
        out << id << ',' << e.index << ',' << e.distance << ',' << format_double(e.fitness) << ','
            << (e.is_peak ? 1 : 0) << "\n";
    write_file(path, out.str());
}

void analyze_table(const AnalyzeOptions& opt, const std::string& id,
                   const EvaluatedLandscape& el, const std::string& row_prefix) {
    const bool want_stats = opt.all || opt.peaks || opt.autocorr || opt.basin || opt.histogram ||
                            opt.profile || !opt.extremes;
    if (!want_stats) return;

    StatsOptions stats_opts;
    stats_opts.walk = {opt.walks, opt.steps};
    stats_opts.histogram_bins = opt.bins;
    stats_opts.with_profile = opt.all || opt.profile;
    Rng rng = Rng::substream(opt.seed, 0x57a7);
    const LandscapeStats stats = compute_stats(el, rng, stats_opts);

    std::cout << "kind,n,m,max_order,sigma,seed,peak_count,lag1_autocorr,basin_fraction\n";
    std::cout << row_prefix << stats.peak_count << ',' << format_double(stats.lag1_autocorr)
              << ',' << (std::isnan(stats.basin_frac) ? "" : format_double(stats.basin_frac))
              << "\n";

    const std::string prefix = opt.out_prefix.empty() ? id : opt.out_prefix;
    if (opt.all || opt.histogram)
        write_histogram_csv(prefix + "_histogram.csv", id, stats.histogram);
    if (opt.all || opt.profile) write_profile_csv(prefix + "_profile.csv", id, stats.profile);
}

void run_analyze(const AnalyzeOptions& opt) {
    const InteractionModel m = model_from_document(read_file(opt.file));
    const std::string id = file_stem(opt.file);

    if (opt.extremes || opt.all) {
        std::cout << "F_max = " << format_double(max_value(m)) << " at [b...b], b = "
                  << format_double(m.alphabet.b) << "\n";
        if (has_known_min(m)) {
            std::cout << "F_min = " << format_double(min_value(m)) << "\n";
        } else {
            std::cout << "F_min unknown (no proven minimizer for this kind)\n";
        }
    }
    const bool table_work = opt.all || opt.peaks || opt.autocorr || opt.basin || opt.histogram ||
                            opt.profile || !opt.extremes;
    if (!table_work) return;

    const EvaluatedLandscape el = enumerate(m, opt.budget);
    std::ostringstream row;
    row << kind_name(m.kind) << ',' << m.n << ',' << m.term_count() << ',' << m.max_order() << ','
        << format_double(m.sigma) << ',' << m.seed << ',';
    analyze_table(opt, id, el, row.str());
}

// ---- nk ----

struct NkGenOptions {
    int n = 10;
    int k = 2;
    std::uint64_t seed = 1;
    std::string out;
};

void run_nk_analyze(const AnalyzeOptions& opt) {
    const NKLandscape nk = nk_from_document(read_file(opt.file));
    const EvaluatedLandscape el = enumerate(nk, opt.budget);
    std::ostringstream row;
    row << "nk," << nk.n << ",," << nk.k + 1 << ",," << nk.seed << ',';
    analyze_table(opt, file_stem(opt.file), el, row.str());
}

// ---- walsh ----

void run_walsh_roundtrip(const std::string& file, std::uint64_t budget) {
    const InteractionModel m = model_from_document(read_file(file));
    const WalshPolynomial w = to_walsh(m);
    const InteractionModel back = from_walsh(w);

    const std::uint64_t points = enumeration_point_count(m.n, 2);
    if (points > budget)
        throw BudgetError(points, budget, "pointwise check needs " + std::to_string(points) +
                                              " evaluations, budget is " + std::to_string(budget));
    double worst = 0.0;
    Point x(m.n);
    for (std::uint64_t y = 0; y < points; ++y) {
        for (int i = 0; i < m.n; ++i) x[i] = (y >> i) & 1 ? 1.0 : -1.0;
        worst = std::max(worst, std::abs(evaluate(m, x) - evaluate_walsh(w, y)));
    }
    std::cout << "terms: " << m.term_count() << "\n";
    std::cout << "max pointwise deviation = " << format_double(worst) << "\n";
    std::cout << "roundtrip identity: " << (same_landscape(back, m) ? "yes" : "no") << "\n";
    if (!same_landscape(back, m)) throw std::runtime_error("roundtrip mismatch");
}

// ---- ga ----

struct GaCliOptions {
    std::vector<std::string> models;
    std::string config_file;
    std::uint64_t seed = 1;
    std::string out = "-";
    std::string out_prefix = "ga";
    int workers = 0;
};

GaConfig load_ga_config(const std::string& path) {
    if (path.empty()) return GaConfig{};
    return ga_config_from_text(read_file(path));
}

void write_runs_csv(std::ostream& out, const std::string& id,
                    const std::vector<SearchTrace>& traces) {
    for (std::size_t r = 0; r < traces.size(); ++r) {
        const SearchTrace& t = traces[r];
        for (std::size_t g = 0; g < t.by_generation.size(); ++g) {
            const GenerationStat& stat = t.by_generation[g];
            out << id << ',' << t.seed << ',' << g << ',' << format_double(stat.best_raw) << ','
                << format_double(stat.best_by_max) << ','
                << (std::isnan(stat.best_minmax) ? "" : format_double(stat.best_minmax)) << ','
                << stat.distance_to_optimum << ',' << (stat.found_global ? 1 : 0) << "\n";
        }
    }
}

void run_ga_run(const GaCliOptions& opt) {
    GaConfig config = load_ga_config(opt.config_file);
    const InteractionModel m = model_from_document(read_file(opt.models.front()));
    const SearchTrace trace = ga_run(m, config, opt.seed);
    std::ostringstream out;
    out << "landscape,seed,generation,best_raw,best_by_max,best_minmax,distance_to_opt,"
           "found_global\n";
    write_runs_csv(out, file_stem(opt.models.front()), {trace});
    emit(opt.out, out.str());
}

void run_ga_sweep(const GaCliOptions& opt) {
    GaConfig config = load_ga_config(opt.config_file);
    std::vector<InteractionModel> models;
    for (const std::string& path : opt.models)
        models.push_back(model_from_document(read_file(path)));
    const GaSweepResult result = ga_sweep(models, config, opt.seed, opt.workers);

    std::ostringstream runs;
    runs << "landscape,seed,generation,best_raw,best_by_max,best_minmax,distance_to_opt,"
            "found_global\n";
    for (std::size_t i = 0; i < models.size(); ++i)
        write_runs_csv(runs, file_stem(opt.models[i]), result.traces[i]);
    write_file(opt.out_prefix + "_runs.csv", runs.str());

    std::ostringstream summary;
    summary << "landscape,runs,success_proportion,mean_fail_distance,std_fail_distance,"
               "final_mean_best_raw,final_mean_best_by_max,final_mean_best_minmax\n";
    for (std::size_t i = 0; i < models.size(); ++i) {
        const GaModelSummary& s = result.summaries[i];
        auto cell = [](double v) { return std::isnan(v) ? std::string() : format_double(v); };
        summary << file_stem(opt.models[i]) << ',' << s.runs << ','
                << format_double(s.success_proportion) << ',' << cell(s.mean_fail_distance) << ','
                << cell(s.std_fail_distance) << ',' << cell(s.mean_best_raw.back()) << ','
                << cell(s.mean_best_by_max.back()) << ',' << cell(s.mean_best_minmax.back())
                << "\n";
    }
    write_file(opt.out_prefix + "_summary.csv", summary.str());
    std::cout << "wrote " << opt.out_prefix << "_runs.csv and " << opt.out_prefix
              << "_summary.csv\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"NM landscape benchmark toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // gen
    GenOptions gen;
    CLI::App* gen_cmd = app.add_subcommand("gen", "Build a landscape and write its document");
    gen_cmd->add_option("--type", gen.type, "Landscape type: 1, 2 or 3")->required();
    gen_cmd->add_option("--n", gen.n, "Feature count")->required();
    gen_cmd->add_option("--m-order", gen.m_order, "Maximum interaction order (default n)");
    gen_cmd->add_option("--sigma", gen.sigma, "Coefficient spread");
    gen_cmd->add_option("--seed", gen.seed, "Construction seed");
    gen_cmd->add_option("--proportion", gen.proportion,
                        "Type 1: fraction of second-order interactions instead of --m-order");
    gen_cmd->add_option("--alphabet", gen.alphabet, "a,b,arity (arity may be 'real')");
    gen_cmd->add_flag("--constant", gen.constant, "Include a constant term");
    gen_cmd->add_option("--out,-o", gen.out, "Output file ('-' = stdout)");
    gen_cmd->callback([&]() { run_gen(gen); });

    // analyze
    AnalyzeOptions analyze;
    CLI::App* analyze_cmd = app.add_subcommand("analyze", "Landscape statistics from a document");
    analyze_cmd->add_option("file", analyze.file, "Landscape document")->required();
    analyze_cmd->add_flag("--extremes", analyze.extremes, "Print the proven extremes only");
    analyze_cmd->add_flag("--peaks", analyze.peaks, "Count local peaks");
    analyze_cmd->add_flag("--autocorr", analyze.autocorr, "Random-walk lag-1 autocorrelation");
    analyze_cmd->add_flag("--basin", analyze.basin, "Basin fraction of the global maximum");
    analyze_cmd->add_flag("--histogram", analyze.histogram, "Write the fitness histogram CSV");
    analyze_cmd->add_flag("--profile", analyze.profile, "Write the distance profile CSV");
    analyze_cmd->add_flag("--all", analyze.all, "Everything, including the CSV side files");
    analyze_cmd->add_option("--bins", analyze.bins, "Histogram bins");
    analyze_cmd->add_option("--walks", analyze.walks, "Walks averaged for the autocorrelation");
    analyze_cmd->add_option("--steps", analyze.steps, "Steps per walk");
    analyze_cmd->add_option("--seed", analyze.seed, "Walk seed");
    analyze_cmd->add_option("--budget", analyze.budget, "Enumeration budget (points)");
    analyze_cmd->add_option("--out-prefix", analyze.out_prefix, "Prefix for CSV side files");
    analyze_cmd->callback([&]() { run_analyze(analyze); });

    // nk
    CLI::App* nk_cmd = app.add_subcommand("nk", "NK landscape utilities");
    nk_cmd->require_subcommand(1);
    NkGenOptions nk_gen;
    CLI::App* nk_gen_cmd = nk_cmd->add_subcommand("gen", "Generate an NK landscape document");
    nk_gen_cmd->add_option("--n", nk_gen.n, "Locus count")->required();
    nk_gen_cmd->add_option("--k", nk_gen.k, "Neighbors per locus")->required();
    nk_gen_cmd->add_option("--seed", nk_gen.seed, "Generation seed");
    nk_gen_cmd->add_option("--out,-o", nk_gen.out, "Output file ('-' = stdout)");
    nk_gen_cmd->callback(
        [&]() { emit(nk_gen.out, to_document(generate_nk(nk_gen.n, nk_gen.k, nk_gen.seed))); });

    AnalyzeOptions nk_analyze;
    CLI::App* nk_analyze_cmd = nk_cmd->add_subcommand("analyze", "Statistics of an NK document");
    nk_analyze_cmd->add_option("file", nk_analyze.file, "NK document")->required();
    nk_analyze_cmd->add_flag("--peaks", nk_analyze.peaks, "Count local peaks");
    nk_analyze_cmd->add_flag("--autocorr", nk_analyze.autocorr, "Walk autocorrelation");
    nk_analyze_cmd->add_flag("--basin", nk_analyze.basin, "Basin fraction");
    nk_analyze_cmd->add_flag("--histogram", nk_analyze.histogram, "Histogram CSV");
    nk_analyze_cmd->add_flag("--profile", nk_analyze.profile, "Profile CSV");
    nk_analyze_cmd->add_flag("--all", nk_analyze.all, "Everything");
    nk_analyze_cmd->add_option("--bins", nk_analyze.bins, "Histogram bins");
    nk_analyze_cmd->add_option("--walks", nk_analyze.walks, "Walks averaged");
    nk_analyze_cmd->add_option("--steps", nk_analyze.steps, "Steps per walk");
    nk_analyze_cmd->add_option("--seed", nk_analyze.seed, "Walk seed");
    nk_analyze_cmd->add_option("--budget", nk_analyze.budget, "Enumeration budget");
    nk_analyze_cmd->add_option("--out-prefix", nk_analyze.out_prefix, "CSV prefix");
    nk_analyze_cmd->callback([&]() { run_nk_analyze(nk_analyze); });

    // walsh
    CLI::App* walsh_cmd = app.add_subcommand("walsh", "Parity-basis conversions");
    walsh_cmd->require_subcommand(1);
    std::string walsh_file, walsh_out;
    std::uint64_t walsh_budget = kDefaultEnumerationBudget;
    CLI::App* walsh_to = walsh_cmd->add_subcommand("to", "Landscape document -> Walsh document");
    walsh_to->add_option("file", walsh_file, "Landscape document")->required();
    walsh_to->add_option("--out,-o", walsh_out, "Output file ('-' = stdout)");
    walsh_to->callback(
        [&]() { emit(walsh_out, to_document(to_walsh(model_from_document(read_file(walsh_file))))); });
    CLI::App* walsh_from = walsh_cmd->add_subcommand("from", "Walsh document -> landscape document");
    walsh_from->add_option("file", walsh_file, "Walsh document")->required();
    walsh_from->add_option("--out,-o", walsh_out, "Output file ('-' = stdout)");
    walsh_from->callback(
        [&]() { emit(walsh_out, to_document(from_walsh(walsh_from_document(read_file(walsh_file))))); });
    CLI::App* walsh_round = walsh_cmd->add_subcommand(
        "roundtrip", "Convert there and back, checking every point");
    walsh_round->add_option("file", walsh_file, "Landscape document")->required();
    walsh_round->add_option("--budget", walsh_budget, "Pointwise-check budget");
    walsh_round->callback([&]() { run_walsh_roundtrip(walsh_file, walsh_budget); });

    // ga
    CLI::App* ga_cmd = app.add_subcommand("ga", "Genetic-algorithm search");
    ga_cmd->require_subcommand(1);
    GaCliOptions ga_opt;
    CLI::App* ga_run_cmd = ga_cmd->add_subcommand("run", "One run on one landscape");
    ga_run_cmd->add_option("--model", ga_opt.models, "Landscape document")
        ->required()
        ->expected(1);
    ga_run_cmd->add_option("--config", ga_opt.config_file, "GA config file");
    ga_run_cmd->add_option("--seed", ga_opt.seed, "Run seed");
    ga_run_cmd->add_option("--out,-o", ga_opt.out, "Trace CSV ('-' = stdout)");
    ga_run_cmd->callback([&]() { run_ga_run(ga_opt); });
    CLI::App* ga_sweep_cmd = ga_cmd->add_subcommand("sweep", "Seeded runs over several landscapes");
    ga_sweep_cmd->add_option("--model", ga_opt.models, "Landscape documents (repeatable)")
        ->required();
    ga_sweep_cmd->add_option("--config", ga_opt.config_file, "GA config file");
    ga_sweep_cmd->add_option("--seed", ga_opt.seed, "Master seed");
    ga_sweep_cmd->add_option("--out-prefix", ga_opt.out_prefix, "Prefix for the CSV outputs");
    ga_sweep_cmd->add_option("--workers", ga_opt.workers, "Worker threads (0 = auto)");
    ga_sweep_cmd->callback([&]() { run_ga_sweep(ga_opt); });

    // experiment
    CLI::App* exp_cmd = app.add_subcommand("experiment", "Reproduce a figure's data files");
    ExperimentSpec spec;
    bool list_ids = false;
    exp_cmd->add_option("--id", spec.id, "Experiment id (see --list)");
    exp_cmd->add_flag("--list", list_ids, "List the experiment ids and exit");
    exp_cmd->add_option("--out", spec.outdir, "Output directory");
    exp_cmd->add_option("--n", spec.n, "Feature count override");
    exp_cmd->add_option("--sigma", spec.sigmas, "Sigma value(s) override");
    exp_cmd->add_option("--replicates", spec.replicates, "Replicate count override");
    exp_cmd->add_option("--seed", spec.seed, "Master seed");
    exp_cmd->add_option("--budget", spec.budget, "Enumeration budget (points)");
    exp_cmd->add_option("--proportions", spec.proportions, "Proportion grid override");
    exp_cmd->add_option("--orders", spec.orders, "Order (or k) list override");
    exp_cmd->add_option("--bins", spec.histogram_bins, "Histogram bins");
    exp_cmd->add_option("--workers", spec.workers, "Worker threads (0 = auto)");
    exp_cmd->callback([&]() {
        if (list_ids) {
            for (const std::string& id : experiment_ids()) std::cout << id << "\n";
            return;
        }
        if (spec.id.empty()) throw CLI::ValidationError("--id is required (or use --list)");
        const std::vector<std::string> files = run_experiment(spec);
        for (const std::string& f : files) std::cout << "wrote " << f << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUserError;
    } catch (const nmland::BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "rerun with --budget " << e.required() << " to allow it\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUserError;
    }
    return kExitOk;
}

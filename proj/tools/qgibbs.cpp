// qgibbs: exact q-enumeration of combinatorial statistics under Gibbs
// weights, with phase classification, limit-law comparison and asymptotic
// diagnostics. See `qgibbs models` for the catalog and README.md for the
// file formats.
#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "qgibbs/catalan_algebra.hpp"
#include "qgibbs/gibbs.hpp"
#include "qgibbs/io.hpp"
#include "qgibbs/models.hpp"
#include "qgibbs/phase.hpp"

using namespace qgibbs;

namespace {

struct Options {
    std::string model;
    std::string q = "1";
    long n = -1;
    std::vector<long> n_list;
    long order = -1;
    std::string format = "csv";
    bool exact = false;
    std::string out;
    std::string cache_dir;
    int threads = 1;
    std::uint64_t seed = 1;
    long samples = 0;
};

void emit(const Options& opt, const std::string& content) {
    if (opt.out.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(opt.out, std::ios::trunc);
    if (!f) throw std::domain_error("cannot open output file " + opt.out);
    f << content;
}

std::string csv_header_line() { return "# qgibbs-format " + std::to_string(kFormatVersion) + "\n"; }

Row row_for(const ModelId& id, long n, const Options& opt) {
    if (opt.order >= 0 && n > opt.order)
        throw std::domain_error("requested n exceeds the truncation order N");
    if (!opt.cache_dir.empty() || opt.order >= 0) {
        long N = opt.order >= 0 ? opt.order : n;
        BivariateTable t = cached_coefficient_table(id, N, opt.cache_dir);
        return t.row(n);
    }
    return exact_row(id, n);
}

std::string law_label(const LawDescriptor& law) {
    std::ostringstream os;
    os.precision(12);
    switch (law.kind) {
        case LawDescriptor::Kind::NegBin: os << "negbin(" << law.r << "," << law.p << ")"; break;
        case LawDescriptor::Kind::Rayleigh: os << "rayleigh(" << law.sigma << ")"; break;
        case LawDescriptor::Kind::Chi: os << "chi(" << law.r << ")"; break;
        case LawDescriptor::Kind::Gaussian: os << "gaussian(" << law.mu << "," << law.sigma << ")"; break;
        case LawDescriptor::Kind::MittagLeffler:
            os << "ml(" << law.alpha << "," << law.beta << "," << law.scale << ")";
            break;
    }
    return os.str();
}

// scientific string from a log2 value (predictions overflow double range)
std::string from_log2(double l2) {
    double l10 = l2 * std::log10(2.0);
    double e = std::floor(l10);
    double mant = std::pow(10.0, l10 - e);
    if (mant >= 10.0) {
        mant /= 10.0;
        e += 1.0;
    }
    std::ostringstream os;
    os.precision(10);
    os << mant << "e" << (e >= 0 ? "+" : "") << static_cast<long long>(e);
    return os.str();
}

void run_parallel(int threads, std::size_t jobs, const std::function<void(std::size_t)>& work) {
    if (threads <= 1 || jobs <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) work(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t per = (jobs + threads - 1) / static_cast<std::size_t>(threads);
    for (int t = 0; t < threads; ++t) {
        std::size_t lo = static_cast<std::size_t>(t) * per, hi = std::min(jobs, lo + per);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &work] {
            for (std::size_t i = lo; i < hi; ++i) work(i);
        });
    }
    for (auto& th : pool) th.join();
}

int cmd_dist(const Options& opt) {
    ModelId id = ModelId::parse(opt.model);
    Rational q = parse_rational(opt.q);
    if (q <= 0) throw std::domain_error("q must be > 0");
    long n = opt.n >= 0 ? opt.n : 10;
    GibbsDistribution d = gibbs_pmf(row_for(id, n, opt), id.name(), n, q);

    std::map<long, std::size_t> emp;
    if (opt.samples > 0)
        for (long k : sample_statistic(d, opt.seed, static_cast<std::size_t>(opt.samples))) ++emp[k];

    if (opt.format == "json") {
        std::ostringstream os;
        os << "{\"format_version\":" << kFormatVersion << ",\"model\":\"" << id.name() << "\",\"n\":" << n
           << ",\"q\":\"" << q.get_str() << "\",\"pmf\":{";
        bool first = true;
        for (const auto& [k, w] : d.weights) {
            Rational p = w / d.partition;
            os << (first ? "" : ",") << "\"" << k << "\":\"" << p.get_str() << "\"";
            first = false;
        }
        os << "}}\n";
        emit(opt, os.str());
        return 0;
    }

    std::ostringstream os;
    os << csv_header_line() << "model,n,q,k,prob";
    if (opt.exact) os << ",weight_exact";
    if (opt.samples > 0) os << ",emp_freq";
    os << "\n";
    for (const auto& [k, w] : d.weights) {
        Rational p = w / d.partition;
        p.canonicalize();
        os << id.name() << "," << n << "," << q.get_str() << "," << k << "," << to_decimal(p);
        if (opt.exact) os << "," << w.get_str();
        if (opt.samples > 0)
            os << ","
               << to_decimal(Rational(static_cast<long>(emp.count(k) ? emp[k] : 0), opt.samples));
        os << "\n";
    }
    emit(opt, os.str());
    return 0;
}

int cmd_phase(const Options& opt) {
    ModelId id = ModelId::parse(opt.model);
    Rational q = parse_rational(opt.q);
    RegimeReport rep = analyze(id, q);
    emit(opt, regime_report_to_json(rep) + "\n");
    return 0;
}

int cmd_compare(const Options& opt) {
    ModelId id = ModelId::parse(opt.model);
    Rational q = parse_rational(opt.q);
    std::vector<long> ns = opt.n_list;
    if (ns.empty() && opt.n >= 0) ns.push_back(opt.n);
    if (ns.empty()) throw std::domain_error("compare needs --n or --n-list");

    auto [law, scaling] = limit_law_for(id, q);
    bool discrete = law.kind == LawDescriptor::Kind::NegBin;
    std::vector<std::string> lines(ns.size());
    run_parallel(opt.threads, ns.size(), [&](std::size_t i) {
        long n = ns[i];
        GibbsDistribution d = gibbs_pmf(row_for(id, n, opt), id.name(), n, q);
        double value;
        std::string metric;
        if (discrete) {
            metric = "tv";
            long shift = std::lround(scaling.shift_const);
            long kmax = d.weights.back().first + 200;
            value = tv_distance(pmf_as_doubles(d, shift), negbin_pmf_map(law, kmax));
        } else {
            metric = "ks";
            value = ks_distance(d, scaling, law);
        }
        std::ostringstream os;
        os.precision(12);
        os << n << "," << metric << "," << value << "," << law_label(law) << "\n";
        lines[i] = os.str();
    });
    std::ostringstream os;
    os << csv_header_line() << "n,metric,value,law\n";
    for (const auto& l : lines) os << l;
    emit(opt, os.str());
    return 0;
}

int cmd_asymp(const Options& opt) {
    ModelId id = ModelId::parse(opt.model);
    Rational q = parse_rational(opt.q);
    std::vector<long> ns = opt.n_list;
    if (ns.empty() && opt.n >= 0) ns.push_back(opt.n);
    if (ns.empty()) throw std::domain_error("asymp needs --n or --n-list");

    std::vector<std::string> lines(ns.size());
    run_parallel(opt.threads, ns.size(), [&](std::size_t i) {
        long n = ns[i];
        Rational f, mean;
        if (id.kind == ModelKind::PermFixedPoints) {
            auto v = perm_fixed_point_sums(q, n, 1);
            f = v[0];
            mean = v[1] / v[0];
        } else {
            Row row = row_for(id, n, opt);
            GibbsDistribution d = gibbs_pmf(row, id.name(), n, q);
            f = d.partition;
            mean = gibbs_moment(d, 1);
        }
        double lf = log2_rational(f);
        double lp = predicted_partition_log2(id, q, n);
        double mp = predicted_mean(id, q, n);
        std::ostringstream os;
        os.precision(12);
        os << n << "," << to_decimal(f) << "," << from_log2(lp) << "," << std::exp2(lf - lp) << ","
           << to_decimal(mean) << "," << mp << "," << to_double(mean) / mp << "\n";
        lines[i] = os.str();
    });
    std::ostringstream os;
    os << csv_header_line() << "n,f_exact,f_predicted,ratio,mean_exact,mean_predicted,mean_ratio\n";
    for (const auto& l : lines) os << l;
    emit(opt, os.str());
    return 0;
}

int cmd_models(const Options& opt) {
    std::ostringstream os;
    os << csv_header_line() << "model,q_c,size_index,statistic\n";
    auto describe = [](const ModelId& id) -> std::pair<std::string, std::string> {
        switch (id.kind) {
            case ModelKind::DyckExcursion: return {"semilength (2n steps)", "returns to zero"};
            case ModelKind::DyckBridge: return {"semilength (2n steps)", "returns to zero"};
            case ModelKind::MotzkinExcursion:
            case ModelKind::MotzkinBridge: return {"length", "returns to zero"};
            case ModelKind::WeightedMotzkin: return {"length", "returns to zero (weighted)"};
            case ModelKind::PermFixedPoints: return {"permutation length", "fixed points"};
            case ModelKind::TwoWatermelon: return {"length", "contacts (start excluded)"};
            case ModelKind::WallWatermelon: return {"semilength (2n steps)", "wall contacts (start included)"};
            case ModelKind::ColouredWalk: return {"length", "returns to zero"};
            case ModelKind::QuarterPlane: return {"length", "axis contacts"};
        }
        return {"?", "?"};
    };
    for (const ModelId& id : catalog_models()) {
        auto [sz, st] = describe(id);
        os << id.name() << "," << scheme_constants(id).q_c_string() << "," << sz << "," << st << "\n";
    }
    emit(opt, os.str());
    return 0;
}

int cmd_cache(const Options& opt) {
    ModelId id = ModelId::parse(opt.model);
    long N = opt.order >= 0 ? opt.order : (opt.n >= 0 ? opt.n : 200);
    if (opt.cache_dir.empty()) throw std::domain_error("cache needs --cache-dir or QGIBBS_CACHE_DIR");
    cached_coefficient_table(id, N, opt.cache_dir);
    std::cout << cache_file_path(opt.cache_dir, id, N) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    if (const char* env = std::getenv("QGIBBS_CACHE_DIR")) opt.cache_dir = env;

    CLI::App app{"exact q-enumeration of combinatorial statistics under Gibbs weights"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool needs_model) {
        if (needs_model) sub->add_option("--model", opt.model, "model spec (see `qgibbs models`)")->required();
        sub->add_option("--q", opt.q, "Gibbs weight: rational like 3/2 or decimal like 1.5");
        sub->add_option("--n", opt.n, "size index");
        sub->add_option("--n-list", opt.n_list, "ascending size indices")->delimiter(',');
        sub->add_option("--order", opt.order, "table truncation order N (>= max n)");
        sub->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--exact", opt.exact, "emit exact rational weights as num/den");
        sub->add_option("--out", opt.out, "output path (default stdout)");
        sub->add_option("--cache-dir", opt.cache_dir, "coefficient-table cache directory");
        sub->add_option("--threads", opt.threads, "parallelism for n-grids")->check(CLI::Range(1, 256));
        sub->add_option("--seed", opt.seed, "sampler seed");
        sub->add_option("--samples", opt.samples, "draw this many samples (dist)");
    };

    CLI::App* dist = app.add_subcommand("dist", "exact Gibbs pmf of the statistic");
    add_common(dist, true);
    CLI::App* phase = app.add_subcommand("phase", "regime report with limit law and scaling");
    add_common(phase, true);
    CLI::App* compare = app.add_subcommand("compare", "distance to the limit law over an n-list");
    add_common(compare, true);
    CLI::App* asymp = app.add_subcommand("asymp", "exact vs predicted partition values and means");
    add_common(asymp, true);
    CLI::App* models = app.add_subcommand("models", "list the model catalog");
    add_common(models, false);
    CLI::App* cache = app.add_subcommand("cache", "prebuild and store a coefficient table");
    add_common(cache, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (dist->parsed()) return cmd_dist(opt);
        if (phase->parsed()) return cmd_phase(opt);
        if (compare->parsed()) return cmd_compare(opt);
        if (asymp->parsed()) return cmd_asymp(opt);
        if (models->parsed()) return cmd_models(opt);
        if (cache->parsed()) return cmd_cache(opt);
    } catch (const std::overflow_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

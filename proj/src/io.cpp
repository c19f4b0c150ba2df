#include "qgibbs/io.hpp"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace qgibbs {

namespace {

std::string rational_string(const Rational& r) { return r.get_str(); }

Rational rational_from_cache(const std::string& s) {
    Rational r(s);
    r.canonicalize();
    return r;
}

}  // namespace

std::string table_to_json(const BivariateTable& table) {
    nlohmann::json j;
    j["format_version"] = kFormatVersion;
    j["model"] = table.model;
    j["max_n"] = std::to_string(table.max_n);
    nlohmann::json rows = nlohmann::json::array();
    for (long n = 0; n <= table.max_n; ++n) {
        nlohmann::json entries = nlohmann::json::object();
        for (const auto& [k, v] : table.rows[static_cast<std::size_t>(n)])
            entries[std::to_string(k)] = rational_string(v);
        rows.push_back(std::move(entries));
    }
    j["rows"] = std::move(rows);
    return j.dump();
}

BivariateTable table_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("format_version") || j["format_version"].get<int>() != kFormatVersion)
        throw std::runtime_error("table_from_json: format version mismatch");
    BivariateTable t;
    t.model = j.at("model").get<std::string>();
    t.max_n = std::stol(j.at("max_n").get<std::string>());
    const auto& rows = j.at("rows");
    if (static_cast<long>(rows.size()) != t.max_n + 1)
        throw std::runtime_error("table_from_json: row count mismatch");
    t.rows.resize(rows.size());
    for (std::size_t n = 0; n < rows.size(); ++n)
        for (auto it = rows[n].begin(); it != rows[n].end(); ++it)
            t.rows[n][std::stol(it.key())] = rational_from_cache(it.value().get<std::string>());
    return t;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::filesystem::path target(path);
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_file_atomic: cannot open " + tmp);
        out << content;
        if (!out.good()) throw std::runtime_error("write_file_atomic: write failed for " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("write_file_atomic: rename failed: " + ec.message());
    }
}

std::string cache_file_path(const std::string& cache_dir, const ModelId& id, long max_n) {
    std::string key = id.name();
    for (auto& c : key)
        if (c == '/' || c == ':' || c == ',') c = '_';
    return cache_dir + "/" + key + "-n" + std::to_string(max_n) + "-v" + std::to_string(kFormatVersion) +
           ".json";
}

BivariateTable cached_coefficient_table(const ModelId& id, long max_n, const std::string& cache_dir,
                                        long limit) {
    if (cache_dir.empty()) return coefficient_table(id, max_n, limit);
    std::string path = cache_file_path(cache_dir, id, max_n);
    {
        std::ifstream in(path, std::ios::binary);
        if (in) {
            std::stringstream ss;
            ss << in.rdbuf();
            try {
                BivariateTable t = table_from_json(ss.str());
                if (t.model == id.name() && t.max_n == max_n) return t;
                std::cerr << "warning: cache entry " << path << " does not match its key; rebuilding\n";
            } catch (const std::exception& e) {
                std::cerr << "warning: ignoring corrupt cache entry " << path << " (" << e.what()
                          << "); rebuilding\n";
            }
        }
    }
    BivariateTable t = coefficient_table(id, max_n, limit);
    try {
        write_file_atomic(path, table_to_json(t));
    } catch (const std::exception& e) {
        std::cerr << "warning: could not write cache entry " << path << " (" << e.what() << ")\n";
    }
    return t;
}

std::string regime_report_to_json(const RegimeReport& report) {
    nlohmann::json j;
    j["format_version"] = kFormatVersion;
    j["model"] = report.model;
    j["q"] = report.q.get_str();
    j["q_c"] = report.q_c;
    j["regime"] = regime_name(report.regime);

    nlohmann::json law;
    law["name"] = report.law.name();
    switch (report.law.kind) {
        case LawDescriptor::Kind::NegBin:
            law["r"] = report.law.r;
            if (!report.negbin_p_exact.empty())
                law["p"] = report.negbin_p_exact;
            else
                law["p"] = report.law.p;
            break;
        case LawDescriptor::Kind::Rayleigh:
            law["sigma"] = report.law.sigma;
            break;
        case LawDescriptor::Kind::Chi:
            law["k"] = report.law.r;
            break;
        case LawDescriptor::Kind::Gaussian:
            law["mu"] = report.law.mu;
            law["sigma"] = report.law.sigma;
            break;
        case LawDescriptor::Kind::MittagLeffler:
            law["alpha"] = report.law.alpha;
            law["beta"] = report.law.beta;
            law["scale"] = report.law.scale;
            break;
    }
    j["law"] = std::move(law);

    nlohmann::json scaling;
    scaling["shift"] = report.scaling.shift_const;
    scaling["shift_per_n"] = report.scaling.shift_per_n;
    scaling["constant"] = report.scaling.scale_const;
    scaling["exponent"] = report.scaling.scale_exp;
    j["scaling"] = std::move(scaling);

    if (report.rho_steps) {
        nlohmann::json sc;
        sc["rho"] = *report.rho_steps;
        sc["mean_constant"] = *report.mean_constant_per_step;
        sc["variance_constant"] = *report.variance_constant_per_step;
        j["supercritical"] = std::move(sc);
    }
    if (!report.notes.empty()) j["notes"] = report.notes;
    return j.dump(2);
}

RegimeReport regime_report_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("format_version").get<int>() != kFormatVersion)
        throw std::runtime_error("regime_report_from_json: format version mismatch");
    RegimeReport rep;
    rep.model = j.at("model").get<std::string>();
    rep.q = parse_rational(j.at("q").get<std::string>());
    rep.q_c = j.at("q_c").get<std::string>();
    std::string regime = j.at("regime").get<std::string>();
    rep.regime = regime == "subcritical"   ? Regime::Subcritical
                 : regime == "critical"    ? Regime::Critical
                                           : Regime::Supercritical;
    const auto& law = j.at("law");
    std::string name = law.at("name").get<std::string>();
    if (name == "negbin") {
        if (law.at("p").is_string()) {
            rep.negbin_p_exact = law.at("p").get<std::string>();
            rep.law = LawDescriptor::negbin(law.at("r").get<int>(),
                                            to_double(parse_rational(rep.negbin_p_exact)));
        } else {
            rep.law = LawDescriptor::negbin(law.at("r").get<int>(), law.at("p").get<double>());
        }
    } else if (name == "rayleigh") {
        rep.law = LawDescriptor::rayleigh(law.at("sigma").get<double>());
    } else if (name == "chi") {
        rep.law = LawDescriptor::chi(law.at("k").get<int>());
    } else if (name == "gaussian") {
        rep.law = LawDescriptor::gaussian(law.at("mu").get<double>(), law.at("sigma").get<double>());
    } else if (name == "mittag-leffler") {
        rep.law = LawDescriptor::mittag_leffler(law.at("alpha").get<double>(), law.at("beta").get<double>(),
                                                law.at("scale").get<double>());
    } else {
        throw std::runtime_error("regime_report_from_json: unknown law " + name);
    }
    const auto& sc = j.at("scaling");
    rep.scaling.shift_const = sc.at("shift").get<double>();
    rep.scaling.shift_per_n = sc.at("shift_per_n").get<double>();
    rep.scaling.scale_const = sc.at("constant").get<double>();
    rep.scaling.scale_exp = sc.at("exponent").get<double>();
    if (j.contains("supercritical")) {
        const auto& s = j["supercritical"];
        rep.rho_steps = s.at("rho").get<double>();
        rep.mean_constant_per_step = s.at("mean_constant").get<double>();
        rep.variance_constant_per_step = s.at("variance_constant").get<double>();
    }
    if (j.contains("notes"))
        for (const auto& note : j["notes"]) rep.notes.push_back(note.get<std::string>());
    return rep;
}

}  // namespace qgibbs

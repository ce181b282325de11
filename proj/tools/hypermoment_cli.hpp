#ifndef HYPERMOMENT_TOOLS_CLI_HPP
#define HYPERMOMENT_TOOLS_CLI_HPP

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypermoment/hypermoment.hpp"

namespace hypermoment::cli {

using io::json;

/// Exit codes: 0 success, 1 identity violations, 2 usage or data errors.
enum ExitCode : int { exit_ok = 0, exit_violations = 1, exit_error = 2 };

struct RunConfig {
    std::string hypergroup;
    std::string spec_file;
    std::string seed_file;
    std::string table_file;
    std::string family_file;
    std::string exponential_file;
    std::string mu;
    std::string nu;
    std::string format;
    std::string out_file;
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t n_max = 0;
    std::uint64_t m_max = 0;
    std::uint64_t x_max = 4;
    std::uint64_t basis_max = 8;
    std::size_t rank = 1;
    std::uint64_t order = 3;
    std::uint64_t rng_seed = 20240601;
    bool approx = false;
};

namespace detail {

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json read_json(const std::string& path)
{
    const std::string text = read_file(path);
    try {
        return json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorCode::ParseError, "'" + path + "' is not valid JSON: " + e.what());
    }
}

// A measure given inline as JSON or as a path to a JSON file.
inline Measure read_measure(const std::string& arg)
{
    if (!arg.empty() && arg.front() == '{') {
        try {
            return io::measure_from_json(json::parse(arg));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::ParseError, std::string("inline measure: ") + e.what());
        }
    }
    return io::measure_from_json(read_json(arg));
}

inline std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

/// Loads and stores the linearization cache under $HYPERMOMENT_CACHE_DIR.
class CachePersistence {
public:
    CachePersistence(const Hypergroup& h, std::string key, std::ostream& err) : h_(h), err_(err)
    {
        const char* dir = std::getenv("HYPERMOMENT_CACHE_DIR");
        if (dir == nullptr || *dir == '\0')
            return;
        path_ = std::filesystem::path(dir) / ("linearization-" + key + ".json");
        std::error_code ec;
        if (!std::filesystem::exists(*path_, ec))
            return;
        try {
            h_.import_linearizations(io::linearization_cache_from_json(read_json(path_->string())));
        } catch (const std::exception& e) {
            err_ << "warning: ignoring unreadable cache " << path_->string() << ": " << e.what() << '\n';
        }
    }

    void save() const
    {
        if (!path_)
            return;
        std::error_code ec;
        std::filesystem::create_directories(path_->parent_path(), ec);
        const auto tmp = path_->string() + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary);
            if (!out) {
                err_ << "warning: cannot write cache " << path_->string() << '\n';
                return;
            }
            out << io::linearization_cache_to_json(h_.spec().name(), h_.cached_linearizations()).dump() << '\n';
        }
        std::filesystem::rename(tmp, *path_, ec);
        if (ec)
            err_ << "warning: cannot write cache " << path_->string() << ": " << ec.message() << '\n';
    }

private:
    const Hypergroup& h_;
    std::ostream& err_;
    std::optional<std::filesystem::path> path_;
};

struct LoadedHypergroup {
    Hypergroup hypergroup;
    std::string cache_key;
};

inline LoadedHypergroup load_hypergroup(const RunConfig& cfg)
{
    if (!cfg.spec_file.empty() && !cfg.hypergroup.empty())
        throw Error(ErrorCode::InvalidSpec, "give exactly one of --hypergroup and --spec");
    if (!cfg.spec_file.empty()) {
        const json j = read_json(cfg.spec_file);
        auto spec = io::spec_from_json(j, std::filesystem::path(cfg.spec_file).stem().string());
        std::ostringstream key;
        key << "custom-" << std::hex << fnv1a(io::spec_to_json(spec).dump());
        return {Hypergroup(std::move(spec)), key.str()};
    }
    const std::string name = cfg.hypergroup.empty() ? "chebyshev1" : cfg.hypergroup;
    return {Hypergroup::catalog(name), name};
}

// Full diagnostic for custom tables before any computation touches them.
inline void require_valid(const Hypergroup& h, std::uint64_t through)
{
    if (!h.spec().is_custom())
        return;
    const auto report = validate_spec(h.spec(), std::min(through, h.spec().n_max()));
    if (!report.valid()) {
        std::vector<std::string> details;
        for (const auto& v : report.violations)
            details.push_back(v.message);
        throw Error(ErrorCode::InvalidSpec, "'" + h.spec().name() + "' is not a hypergroup spec", details);
    }
}

inline std::string render(const json& j) { return j.dump() + "\n"; }

inline std::string measure_csv(const Measure& mu)
{
    std::string out = "k,weight\n";
    for (const auto& [k, w] : mu.atoms())
        out += std::to_string(k) + "," + w.str() + "\n";
    return out;
}

inline std::string report_csv(const VerificationReport& r)
{
    std::string out = "alpha,n,m,lhs,rhs\n";
    for (const auto& v : r.violations)
        out += "\"" + v.alpha.str() + "\"," + std::to_string(v.n) + "," + std::to_string(v.m) + "," + v.lhs.str() +
               "," + v.rhs.str() + "\n";
    return out;
}

inline MomentSeed load_seed(const std::string& path)
{
    auto seed = io::seed_from_json(read_json(path));
    seed.require_complete();
    return seed;
}

inline MomentTable load_table(const std::string& path)
{
    const std::string text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            return io::table_from_json(json::parse(text));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::ParseError, "'" + path + "': " + e.what());
        }
    }
    return io::table_from_csv(text);
}

// Small deterministic rationals for the default bell-check family.
inline Scalar small_rational(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 5);
    const long d = den(rng);
    return Scalar::ratio(num(rng), d);
}

} // namespace detail

inline int cmd_catalog(const RunConfig& cfg, std::ostream& out)
{
    if (cfg.format == "json") {
        json list = json::array();
        for (const auto& e : catalog_entries)
            list.push_back(json{{"name", e.name}, {"description", e.description}, {"a_n", e.a}, {"b_n", e.b},
                                {"c_n", e.c}});
        out << detail::render(json{{"catalog", list}});
    } else if (cfg.format == "csv") {
        out << "name,a_n,b_n,c_n\n";
        for (const auto& e : catalog_entries)
            out << e.name << ",\"" << e.a << "\",\"" << e.b << "\",\"" << e.c << "\"\n";
    } else {
        for (const auto& e : catalog_entries)
            out << e.name << "\n  " << e.description << "\n  a_n = " << e.a << ", b_n = " << e.b
                << ", c_n = " << e.c << "\n";
    }
    return exit_ok;
}

inline int cmd_linearize(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    auto [h, key] = detail::load_hypergroup(cfg);
    detail::CachePersistence cache(h, key, err);
    detail::require_valid(h, cfg.n + cfg.m);
    const Measure mu = h.linearize(cfg.n, cfg.m);
    out << (cfg.format == "csv" ? detail::measure_csv(mu) : detail::render(io::to_json(mu)));
    cache.save();
    return exit_ok;
}

inline int cmd_convolve(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    auto [h, key] = detail::load_hypergroup(cfg);
    detail::CachePersistence cache(h, key, err);
    const Measure mu = cfg.mu.empty() ? Measure::delta(cfg.n) : detail::read_measure(cfg.mu);
    const Measure nu = cfg.nu.empty() ? Measure::delta(cfg.m) : detail::read_measure(cfg.nu);
    detail::require_valid(h, mu.max_support().value_or(0) + nu.max_support().value_or(0));
    const Measure result = h.convolve(mu, nu);
    out << (cfg.format == "csv" ? detail::measure_csv(result) : detail::render(io::to_json(result)));
    cache.save();
    return exit_ok;
}

inline int cmd_moments(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (cfg.seed_file.empty())
        throw Error(ErrorCode::ParseError, "moments needs --seed");
    auto [h, key] = detail::load_hypergroup(cfg);
    detail::CachePersistence cache(h, key, err);
    detail::require_valid(h, cfg.n_max);
    const auto table = moment_table(h, detail::load_seed(cfg.seed_file), cfg.n_max);
    out << (cfg.format == "csv" ? io::table_to_csv(table, cfg.approx) : detail::render(io::to_json(table, cfg.approx)));
    cache.save();
    return exit_ok;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (cfg.seed_file.empty() == cfg.table_file.empty())
        throw Error(ErrorCode::ParseError, "verify needs exactly one of --seed and --table");
    auto [h, key] = detail::load_hypergroup(cfg);
    detail::CachePersistence cache(h, key, err);
    detail::require_valid(h, cfg.n_max + cfg.m_max);
    const MomentTable table = cfg.seed_file.empty()
                                  ? detail::load_table(cfg.table_file)
                                  : moment_table(h, detail::load_seed(cfg.seed_file), cfg.n_max + cfg.m_max);
    const auto report = verify_binomial(h, table, cfg.n_max, cfg.m_max);
    out << (cfg.format == "csv" ? detail::report_csv(report) : detail::render(io::to_json(report)));
    cache.save();
    return report.passed() ? exit_ok : exit_violations;
}

inline int cmd_bell_check(const RunConfig& cfg, std::ostream& out, std::ostream&)
{
    std::mt19937_64 rng(cfg.rng_seed);
    const AdditiveFamily family = [&] {
        if (!cfg.family_file.empty())
            return io::family_from_json(detail::read_json(cfg.family_file));
        std::map<MultiIndex, Scalar> slopes;
        for (const auto& alpha : mi_enumerate(cfg.rank, cfg.order))
            if (!alpha.is_zero())
                slopes.emplace(alpha, detail::small_rational(rng));
        return AdditiveFamily(cfg.rank, cfg.order, std::move(slopes));
    }();
    const GroupExponential m = cfg.exponential_file.empty()
                                   ? GroupExponential{Scalar(1)}
                                   : io::exponential_from_json(detail::read_json(cfg.exponential_file));

    json checks = json::array();
    bool passed = true;
    auto record = [&](const std::string& name, std::uint64_t checked, std::uint64_t failures) {
        checks.push_back(json{{"name", name}, {"checked", checked}, {"failures", failures}});
        passed = passed && failures == 0;
    };

    const auto group = verify_group_binomial(family, m, family.order(), cfg.x_max);
    record("group_binomial", group.checked, group.violations.size());

    if (family.rank() == 1) {
        std::uint64_t checked = 0;
        std::uint64_t failures = 0;
        for (std::uint64_t n = 0; n <= family.order(); ++n) {
            for (std::uint64_t x = 0; x <= cfg.x_max; ++x) {
                ++checked;
                const MultiIndex alpha{static_cast<MultiIndex::value_type>(n)};
                if (!(aczel_rank1(n, x, family) == group_moment(alpha, x, family, GroupExponential{Scalar(1)})))
                    ++failures;
            }
        }
        record("partition_sum_vs_bell", checked, failures);
    }

    {
        RunConfig hcfg = cfg;
        auto [h, key] = detail::load_hypergroup(hcfg);
        Jet f(family.rank(), family.order());
        f.set(MultiIndex::zero(family.rank()), detail::small_rational(rng));
        for (const auto& [alpha, s] : family.slopes())
            f.set(alpha, s);
        std::uint64_t checked = 0;
        std::uint64_t failures = 0;
        for (std::uint64_t n = 0; n <= cfg.basis_max; ++n) {
            for (const auto& alpha : mi_enumerate(family.rank(), family.order())) {
                ++checked;
                const auto pair = faa_di_bruno_check(h, n, f, alpha);
                if (!(pair.decomposed == pair.direct))
                    ++failures;
            }
        }
        record("faa_di_bruno", checked, failures);
    }

    const json result{{"family", io::to_json(family)},
                      {"exponential", io::to_json(m)},
                      {"checks", checks},
                      {"passed", passed}};
    if (cfg.format == "csv") {
        out << "name,checked,failures\n";
        for (const auto& c : checks)
            out << c["name"].get<std::string>() << ',' << c["checked"] << ',' << c["failures"] << '\n';
    } else {
        out << detail::render(result);
    }
    return passed ? exit_ok : exit_violations;
}

/// Entry point shared by the executable and the tests.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Polynomial hypergroups, linearization and generalized moment functions"};
    app.name("hypermoment");
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_hypergroup = [&](CLI::App* sub) {
        auto* hg = sub->add_option("--hypergroup", cfg.hypergroup, "catalog hypergroup name");
        auto* spec = sub->add_option("--spec", cfg.spec_file, "custom recurrence table (JSON)");
        hg->excludes(spec);
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", cfg.out_file, "write output to FILE instead of stdout");
    };

    auto* catalog = app.add_subcommand("catalog", "list catalog hypergroups");
    add_output(catalog);

    auto* linearize = app.add_subcommand("linearize", "print delta_n * delta_m");
    add_hypergroup(linearize);
    linearize->add_option("--n", cfg.n)->required();
    linearize->add_option("--m", cfg.m)->required();
    add_output(linearize);

    auto* convolve = app.add_subcommand("convolve", "convolve two finitely supported measures");
    add_hypergroup(convolve);
    convolve->add_option("--mu", cfg.mu, "measure JSON or file (default delta_n)");
    convolve->add_option("--nu", cfg.nu, "measure JSON or file (default delta_m)");
    convolve->add_option("--n", cfg.n);
    convolve->add_option("--m", cfg.m);
    add_output(convolve);

    auto* moments = app.add_subcommand("moments", "generate a moment function table from a seed");
    add_hypergroup(moments);
    moments->add_option("--seed", cfg.seed_file, "seed JSON")->required();
    moments->add_option("--nmax", cfg.n_max)->required();
    moments->add_flag("--approx", cfg.approx, "add a non-authoritative decimal column");
    add_output(moments);

    auto* verify = app.add_subcommand("verify", "check the binomial convolution identity");
    add_hypergroup(verify);
    verify->add_option("--seed", cfg.seed_file, "seed JSON (generate, then verify)");
    verify->add_option("--table", cfg.table_file, "table file (JSON or CSV)");
    verify->add_option("--nmax", cfg.n_max)->required();
    verify->add_option("--mmax", cfg.m_max)->required();
    add_output(verify);

    auto* bell = app.add_subcommand("bell-check", "run the group-case Bell polynomial oracles");
    add_hypergroup(bell);
    bell->add_option("--rank", cfg.rank)->check(CLI::PositiveNumber);
    bell->add_option("--order", cfg.order);
    bell->add_option("--family", cfg.family_file, "additive family JSON");
    bell->add_option("--exponential", cfg.exponential_file, "exponential JSON");
    bell->add_option("--xmax", cfg.x_max, "largest group element checked");
    bell->add_option("--nmax", cfg.basis_max, "largest basis index for the composition check (default 8)");
    bell->add_option("--rng-seed", cfg.rng_seed, "seed for the default random family");
    add_output(bell);

    std::vector<std::string> storage{"hypermoment"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : storage)
        argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_error;
    }

    std::ostringstream buffer;
    int code = exit_ok;
    try {
        if (catalog->parsed())
            code = cmd_catalog(cfg, buffer);
        else if (linearize->parsed())
            code = cmd_linearize(cfg, buffer, err);
        else if (convolve->parsed())
            code = cmd_convolve(cfg, buffer, err);
        else if (moments->parsed())
            code = cmd_moments(cfg, buffer, err);
        else if (verify->parsed())
            code = cmd_verify(cfg, buffer, err);
        else if (bell->parsed())
            code = cmd_bell_check(cfg, buffer, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        for (const auto& d : e.details())
            err << "  " << d << '\n';
        return exit_error;
    }

    if (cfg.out_file.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(cfg.out_file, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << cfg.out_file << "'\n";
            return exit_error;
        }
        file << buffer.str();
    }
    return code;
}

} // namespace hypermoment::cli

#endif

#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "gcw/decoration.hpp"
#include "gcw/enumerate.hpp"
#include "gcw/errors.hpp"
#include "gcw/linalg.hpp"
#include "gcw/strata.hpp"

namespace gcw::cli {

namespace {

using nlohmann::ordered_json;

// Decorated bases grow like n!; checks beyond this degree are out of desk scale.
constexpr int kDecoratedCheckMaxN = 6;
constexpr int kPosetCheckMaxN = 5;
constexpr int kOracleMaxP = 6;
constexpr int kOracleMaxQ = 10;

ordered_json family_json(const strata::NestedFamily& f) { return f.sets; }

struct CheckLog {
    ordered_json items = ordered_json::array();
    bool all_pass = true;

    void record(const std::string& name, bool pass)
    {
        items.push_back({{"name", name}, {"pass", pass}});
        all_pass = all_pass && pass;
    }
};

std::string bidegree_tag(int m, int n) { return "m=" + std::to_string(m) + " n=" + std::to_string(n); }

void check_d2(const RunConfig& cfg, int max_n, CheckLog& log)
{
    GraphComplex cx(cfg.complex_options());
    for (int n = 2; n <= max_n; n += 2)
        for (bool decorated : {false, true}) {
            if (decorated && n > kDecoratedCheckMaxN) continue;
            for (int m = 0; m + 1 <= max_excess(n); ++m)
                log.record(std::string(decorated ? "decorated" : "undecorated") + " d2=0 " + bidegree_tag(m, n),
                           image_in_kernel(cx.differential(m, n, decorated), cx.differential(m + 1, n, decorated)));
        }
}

void check_chainmap(const RunConfig& cfg, int max_n, CheckLog& log)
{
    GraphComplex cx(cfg.complex_options());
    for (int n = 2; n <= max_n; n += 2)
        for (int m = 0; m <= max_excess(n); ++m) {
            const auto i_here = cx.average_map(m, n);
            const auto f_here = cx.forget_map(m, n);
            log.record("f.i=id " + bidegree_tag(m, n),
                       multiply(f_here, i_here) == RationalSparseMatrix::identity(cx.component(m, n, false).dim()));
            const auto lhs = multiply(cx.differential(m, n, true), i_here);
            const auto rhs = multiply(cx.average_map(m + 1, n), cx.differential(m, n, false));
            log.record("d~.i=i.d " + bidegree_tag(m, n), lhs == rhs);
        }
}

void check_counts(const RunConfig& cfg, int max_n, CheckLog& log)
{
    for (int n = 2; n <= max_n; n += 2)
        for (int m = 0; m <= max_excess(n); ++m) {
            EnumerationRequest req;
            req.p = n - m;
            req.q = 3 * n / 2 - m;
            req.connected_only = cfg.connected_only;
            req.cap = cfg.generator_cap;
            req.threads = cfg.thread_count;
            bool formula_ok = true;
            for (const auto& gen : enumerate_admissible_classes(req))
                formula_ok = formula_ok && decorations_of(gen.graph).size() == decoration_count(gen.graph);
            log.record("|A| formula " + bidegree_tag(m, n), formula_ok);
            if (req.p <= kOracleMaxP && req.q <= kOracleMaxQ) {
                std::vector<std::string> a, b;
                for (const auto& g : enumerate_basis(req)) a.push_back(g.key);
                for (const auto& g : brute_force_oracle(req)) b.push_back(g.key);
                log.record("enumeration vs oracle " + bidegree_tag(m, n), a == b);
            }
        }
}

void check_strata(int max_n, CheckLog& log)
{
    for (int n = 1; n <= max_n; ++n) {
        bool codim2 = true;
        for (const auto& [a, d] : strata::legal_codim2_pairs(n)) codim2 = codim2 && strata::codim2_consistency(n, a, d);
        log.record("codim-2 consistency n=" + std::to_string(n), codim2);
        if (n <= strata::kMaxNestedN)
            log.record("codim-1 face count n=" + std::to_string(n),
                       strata::enumerate_nested(n, 1).size() == (std::size_t{1} << (n + 1)) - n - 2);
        if (n <= kPosetCheckMaxN) {
            const auto poset = strata::face_poset(n, n);
            bool dims = true;
            for (const auto& [lo, hi] : poset.covers) dims = dims && poset.dims[lo] == poset.dims[hi] + 1;
            log.record("stratum dimension along covers n=" + std::to_string(n), dims);
        }
        if (n >= 2)
            log.record("propagator schedule closure n=" + std::to_string(n),
                       strata::schedule_is_closed(n, strata::induction_schedule(n)));
    }
}

} // namespace

ComplexOptions RunConfig::complex_options() const
{
    ComplexOptions o;
    o.connected_only = connected_only;
    o.cap = generator_cap;
    o.threads = thread_count;
    o.cache_dir = cache_dir;
    return o;
}

unsigned parse_thread_count(const std::string& value)
{
    if (value == "auto" || value == "AUTO") return std::max(1u, std::thread::hardware_concurrency());
    std::size_t used = 0;
    const long v = std::stol(value, &used);
    if (used != value.size() || v < 1) throw std::invalid_argument("thread count must be a positive integer or auto");
    return static_cast<unsigned>(v);
}

RunConfig config_from_environment()
{
    RunConfig cfg;
    if (const char* dir = std::getenv("GCW_CACHE_DIR"); dir && *dir) cfg.cache_dir = dir;
    if (const char* threads = std::getenv("GCW_THREADS"); threads && *threads) cfg.thread_count = parse_thread_count(threads);
    return cfg;
}

int cmd_enum(const RunConfig& cfg, int p, int q, bool decorated, std::ostream& out)
{
    EnumerationRequest req;
    req.p = p;
    req.q = q;
    req.decorated = decorated;
    req.connected_only = cfg.connected_only;
    req.cap = cfg.generator_cap;
    req.threads = cfg.thread_count;
    write_jsonl(out, cached_basis(cfg.cache_dir, req));
    return kOk;
}

int cmd_homology(const RunConfig& cfg, int n, int m_min, int m_max, bool decorated, std::ostream& out)
{
    if (n < 0 || n % 2 != 0) throw std::invalid_argument("--n must be a non-negative even integer");
    if (m_min > m_max) throw std::invalid_argument("empty excess range");
    GraphComplex cx(cfg.complex_options());
    ordered_json doc;
    doc["n"] = n;
    doc["decorated"] = decorated;
    doc["connected_only"] = cfg.connected_only;
    doc["rows"] = ordered_json::array();
    for (int m = m_min; m <= m_max; ++m) doc["rows"].push_back(ordered_json::parse(to_json(cx.homology(m, n, decorated))));
    out << doc.dump() << '\n';
    return kOk;
}

int cmd_aeven(const RunConfig& cfg, int k, AevenMethod method, int max_k, std::ostream& out)
{
    GraphComplex cx(cfg.complex_options());
    out << to_json(a_even(k, method, cx, max_k)) << '\n';
    return kOk;
}

int cmd_check(const RunConfig& cfg, const std::string& suite, int max_n, std::ostream& out)
{
    CheckLog log;
    if (suite == "d2")
        check_d2(cfg, max_n, log);
    else if (suite == "chainmap")
        check_chainmap(cfg, max_n, log);
    else if (suite == "counts")
        check_counts(cfg, max_n, log);
    else if (suite == "strata")
        check_strata(max_n, log);
    else
        throw std::invalid_argument("unknown suite: " + suite);
    ordered_json doc;
    doc["suite"] = suite;
    doc["max_n"] = max_n;
    doc["checks"] = log.items;
    doc["result"] = log.all_pass ? "PASS" : "FAIL";
    out << doc.dump() << '\n';
    return log.all_pass ? kOk : kInternal;
}

int cmd_strata(int n, const std::string& op, int max_size, std::ostream& out)
{
    if (n < 1) throw std::invalid_argument("--n must be at least 1");
    ordered_json doc;
    doc["n"] = n;
    doc["op"] = op;
    if (op == "faces") {
        doc["labels"] = ordered_json::array();
        for (const auto& f : strata::enumerate_nested(n, 1))
            doc["labels"].push_back({{"family", family_json(f)}, {"dim", strata::StratumLabel{n, f}.dimension()}});
        doc["count"] = doc["labels"].size();
    } else if (op == "poset") {
        const auto poset = strata::face_poset(n, max_size, true);
        doc["max_size"] = max_size;
        doc["nodes"] = ordered_json::array();
        for (std::size_t i = 0; i < poset.nodes.size(); ++i)
            doc["nodes"].push_back({{"family", family_json(poset.nodes[i])}, {"dim", poset.dims[i]}});
        doc["covers"] = poset.covers;
        doc["containments"] = poset.containments;
    } else if (op == "codim2") {
        doc["pairs"] = ordered_json::array();
        bool all = true;
        for (const auto& [a, d] : strata::legal_codim2_pairs(n)) {
            const bool ok = strata::codim2_consistency(n, a, d);
            all = all && ok;
            const bool disjoint = std::none_of(a.begin(), a.end(), [&](int x) { return std::binary_search(d.begin(), d.end(), x); });
            doc["pairs"].push_back({{"A", a}, {"D", d}, {"kind", disjoint ? "disjoint" : "nested"}, {"consistent", ok}});
        }
        doc["count"] = doc["pairs"].size();
        doc["all_consistent"] = all;
    } else if (op == "schedule") {
        const auto schedule = strata::induction_schedule(n);
        doc["layers"] = ordered_json::array();
        for (const auto& layer : schedule) {
            ordered_json l;
            l["quotient_size"] = layer.quotient_size;
            l["collections"] = ordered_json::array();
            for (const auto& c : layer.collections)
                l["collections"].push_back({{"sets", c.sets}, {"index_set_size", strata::propagator_index_set(n, c).size()}});
            doc["layers"].push_back(std::move(l));
        }
        doc["closed"] = strata::schedule_is_closed(n, schedule);
    } else {
        throw std::invalid_argument("unknown strata op: " + op);
    }
    out << doc.dump() << '\n';
    return kOk;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Graph complex cohomology, trivalent graph homology and compactification strata combinatorics"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string threads, cache_dir;
    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--connected-only", cfg.connected_only, "Restrict bases to connected graphs");
        sub->add_option("--cap", cfg.generator_cap, "Generator cap per component")->check(CLI::PositiveNumber);
        sub->add_option("--threads", threads, "Worker threads (positive integer or auto); default GCW_THREADS");
        sub->add_option("--cache-dir", cache_dir, "Basis cache directory; default GCW_CACHE_DIR");
    };

    int p = 0, q = 0, n = 0, k = 0, max_n = 6, max_k = kDefaultMaxK, max_size = 2;
    int m_min = 0, m_max = -1;
    bool decorated = false;
    std::string method = "ihx", suite, op;

    auto* en = app.add_subcommand("enum", "Enumerate a basis as JSONL");
    en->add_option("--p", p, "Vertex count")->required();
    en->add_option("--q", q, "Edge count")->required();
    en->add_flag("--decorated", decorated, "Decorated generators");
    add_common(en);

    auto* ho = app.add_subcommand("homology", "Cohomology dimensions at fixed degree");
    ho->add_option("--n", n, "Twice the degree (even)")->required();
    ho->add_option("--m-min", m_min, "Smallest excess");
    ho->add_option("--m-max", m_max, "Largest excess (default n-1)");
    ho->add_flag("--decorated", decorated, "Use the decorated complex");
    add_common(ho);

    auto* ae = app.add_subcommand("aeven", "Dimension of the trivalent graph homology");
    ae->add_option("--k", k, "Half the number of vertices")->required();
    ae->add_option("--method", method, "ihx or coker")->check(CLI::IsMember({"ihx", "coker"}));
    ae->add_option("--max-k", max_k, "Resource bound on k");
    add_common(ae);

    auto* ch = app.add_subcommand("check", "Run an invariant suite");
    ch->add_option("--suite", suite, "d2, chainmap, counts or strata")
        ->required()
        ->check(CLI::IsMember({"d2", "chainmap", "counts", "strata"}));
    ch->add_option("--max-n", max_n, "Largest degree parameter");
    add_common(ch);

    auto* st = app.add_subcommand("strata", "Compactification strata combinatorics");
    st->add_option("--n", n, "Number of non-basepoint points")->required();
    st->add_option("--op", op, "faces, poset, codim2 or schedule")
        ->required()
        ->check(CLI::IsMember({"faces", "poset", "codim2", "schedule"}));
    st->add_option("--max-size", max_size, "Largest family size for poset");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kBadArguments;
    }

    try {
        RunConfig env = config_from_environment();
        cfg.cache_dir = cache_dir.empty() ? env.cache_dir : std::filesystem::path(cache_dir);
        cfg.thread_count = threads.empty() ? env.thread_count : parse_thread_count(threads);

        if (en->parsed()) return cmd_enum(cfg, p, q, decorated, out);
        if (ho->parsed()) return cmd_homology(cfg, n, m_min, m_max < 0 ? max_excess(n) : m_max, decorated, out);
        if (ae->parsed()) return cmd_aeven(cfg, k, method == "coker" ? AevenMethod::Coker : AevenMethod::Ihx, max_k, out);
        if (ch->parsed()) return cmd_check(cfg, suite, max_n, out);
        if (st->parsed()) return cmd_strata(n, op, max_size, out);
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << '\n';
        return kResourceCap;
    } catch (const InvariantViolation& e) {
        err << "internal assertion failed: " << e.what() << '\n';
        return kInternal;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kBadArguments;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kBadArguments;
}

} // namespace gcw::cli

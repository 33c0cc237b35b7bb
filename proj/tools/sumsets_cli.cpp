// Command-line front end: instance file I/O plus one subcommand per
// verification or generation task. Exit codes: 0 = all checks hold,
// 1 = a theorem check reported false, 2 = usage or parse error,
// 3 = enumeration cap or memory budget exceeded.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "sumsets/bounds.hpp"
#include "sumsets/corpus.hpp"
#include "sumsets/extremal.hpp"
#include "sumsets/io.hpp"

using namespace sumsets;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << content;
}

GSet parse_element_list(const SumsetInstance& inst, const std::string& text, const char* what) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string(what) + ": invalid JSON: " + e.what());
    }
    return GSet(inst.spec(), detail::parse_vector_list(j, inst.spec().dim(), what));
}

struct CommonFlags {
    size_t cap = kDefaultEnumerationCap;
    uint64_t seed = 24601;
    size_t precision = 128;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--cap", f.cap, "Subset-enumeration limit (default 20)");
    cmd->add_option("--seed", f.seed, "Seed for any sampling (default 24601)");
    cmd->add_option("--precision", f.precision, "Interval precision in bits (default 128)");
}

std::string holds_tag(bool h) { return h ? "ok  " : "FAIL"; }

void print_record(const BoundRecord& r) {
    std::cout << "[" << holds_tag(r.holds) << "] " << r.check << ": " << r.name << "  --  "
              << r.lhs << " <= " << r.rhs << "\n";
}

int finish_report(Report& rep, const std::string& out_path, const std::string& csv_path) {
    if (!out_path.empty()) {
        write_file(out_path, report_to_json(rep));
        std::string csv = csv_path;
        if (csv.empty()) {
            std::filesystem::path p(out_path);
            p.replace_extension(".csv");
            csv = p.string();
        }
        write_file(csv, report_to_csv(rep));
    } else if (!csv_path.empty()) {
        write_file(csv_path, report_to_csv(rep));
    }
    if (rep.all_hold()) {
        std::cout << rep.records.size() << " checks, all hold\n";
        return 0;
    }
    for (const auto& r : rep.records)
        if (!r.holds) {
            std::cout << "first counterwitness:\n" << record_json(r).dump(2) << "\n";
            break;
        }
    return 1;
}

// ---------------------------------------------------------------------------

int run_verify(const std::string& path, std::vector<std::string> checks, const CommonFlags& f,
               const std::string& eps_text, size_t samples, size_t e_max_size, size_t e_samples,
               const std::string& out_path, const std::string& csv_path, bool timing,
               const std::vector<std::string>& alpha_texts) {
    InstanceFile file = parse_instance(read_file(path));
    const SumsetInstance& inst = file.instance;
    std::vector<Rational> alphas;
    for (const auto& a : alpha_texts) alphas.push_back(Rational::parse(a));
    resolve_alphas(inst, alphas);  // validate eagerly (>= tight ratios)
    Report rep;
    rep.instance = path;
    rep.seed = f.seed;
    rep.precision_bits = f.precision;
    rep.cap = f.cap;

    auto timed = [&](auto&& fn) {
        auto t0 = std::chrono::steady_clock::now();
        size_t before = rep.records.size();
        fn();
        auto t1 = std::chrono::steady_clock::now();
        if (timing)
            for (size_t i = before; i < rep.records.size(); ++i)
                rep.records[i].ms =
                    std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    };

    for (const std::string& c : checks) {
        if (c == "thm11") {
            timed([&] { rep.records.push_back(check_thm11(inst, alphas)); });
        } else if (c == "thm22") {
            timed([&] {
                auto r = find_ruzsa_subset(inst, f.cap, alphas);
                rep.records.push_back(r.record);
                rep.records.push_back(r.corollary);
            });
        } else if (c == "thm21") {
            timed([&] {
                SubsetPolicy pol;
                pol.samples = samples;
                pol.seed = f.seed;
                auto r = check_balister_bollobas(inst, pol, alphas);
                r.worst.name += " [" + r.policy + ", " + std::to_string(r.tested) + " C tested]";
                rep.records.push_back(r.worst);
                rep.records.push_back(r.specialization);
            });
        } else if (c == "eps") {
            timed([&] {
                auto r = find_dense_subset_eps(inst, Rational::parse(eps_text), f.cap, alphas);
                rep.records.push_back(r.record);
                if (r.sharper) rep.records.push_back(*r.sharper);
            });
        } else if (c == "prop31") {
            timed([&] {
                auto r = check_prop31(inst, f.cap, f.precision, alphas);
                rep.records.push_back(r.chain);
                rep.records.push_back(r.analytic);
            });
        } else if (c == "cor518") {
            timed([&] {
                // every E of size <= e_max_size (never all of A); seeded
                // sample when there are more than e_samples of them
                std::vector<uint64_t> masks;
                size_t m = inst.m();
                if (m > f.cap || m > 30)
                    throw CapExceededError("cor518 E enumeration", m,
                                           std::min<size_t>(f.cap, 30));
                for (uint64_t mask = 0; mask < (1ULL << m); ++mask) {
                    size_t sz = static_cast<size_t>(__builtin_popcountll(mask));
                    if (sz <= e_max_size && sz < m) masks.push_back(mask);
                }
                if (masks.size() > e_samples) {
                    Rng rng(f.seed);
                    std::vector<uint64_t> chosen;
                    for (size_t k = 0; k < e_samples; ++k) {
                        size_t idx = rng.below(masks.size());
                        chosen.push_back(masks[idx]);
                        masks.erase(masks.begin() + static_cast<long>(idx));
                    }
                    masks = std::move(chosen);
                }
                for (uint64_t mask : masks) {
                    std::vector<Element> elems;
                    for (size_t k = 0; k < m; ++k)
                        if (mask & (1ULL << k)) elems.push_back(inst.A()[k]);
                    auto r = check_cor518(inst, GSet(inst.spec(), std::move(elems)), f.cap);
                    r.record.seed = f.seed;
                    rep.records.push_back(r.record);
                }
            });
        } else if (c == "thm515") {
            timed([&] {
                auto r = check_thm515(inst, f.cap);
                rep.records.push_back(r.product_form);
                rep.records.push_back(r.power_form);
            });
        } else if (c == "thm517") {
            timed([&] { rep.records.push_back(check_thm517(inst, f.cap)); });
        } else if (c == "lemma513") {
            timed([&] { rep.records.push_back(check_lemma513(inst)); });
        } else {
            throw ParseError("unknown check '" + c +
                             "' (expected thm11, prop31, thm21, thm22, eps, cor518, thm515, "
                             "thm517, lemma513)");
        }
    }
    for (const auto& r : rep.records) print_record(r);
    return finish_report(rep, out_path, csv_path);
}

int run_extremal(int h, int64_t a, int64_t l, const std::string& lift_text,
                 const std::string& out_path, size_t budget, size_t precision) {
    ExtremalParams params(h, a, l);
    auto pred = predicted_cardinalities(params);
    SumsetInstance inst = build_extremal_instance(params, budget);

    std::vector<size_t> lift_sizes;
    if (!lift_text.empty()) {
        std::stringstream ss(lift_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) lift_sizes.push_back(std::stoull(tok));
        inst = lift_with_generators(inst, lift_sizes, budget);
    }

    size_t top = iterated_sumset(inst, IndexSet::full(inst.h())).size();
    std::cout << "h=" << h << " a=" << a << " l=" << l << " b=" << params.b()
              << " k=" << params.k().to_string() << "\n";
    std::cout << "predicted: m=" << pred.m.to_string()
              << " |A+B_i|=" << pred.sum_with_bi.to_string()
              << " top=" << pred.top_exact.to_string()
              << " lower=" << pred.lower_bound.to_string() << "\n";
    std::cout << "enumerated: m=" << inst.m();
    for (int i = 1; i <= inst.h(); ++i) std::cout << " |A+B_" << i << "|=" << inst.a_plus_b_size(i);
    std::cout << " top=" << top << "\n";

    if (lift_sizes.empty()) {
        // sharpness ratio |A+sum B| / (alpha^h m^(2-1/h)) with the
        // construction alpha, against the target constant
        RatInterval mpow = root_pow(Rational(BigInt(static_cast<long long>(inst.m()))),
                                    static_cast<uint64_t>(2 * h - 1), static_cast<uint64_t>(h),
                                    precision);
        RatInterval denom = RatInterval(pow(pred.alpha, h)) * mpow;
        RatInterval ratio = RatInterval(Rational(BigInt(static_cast<long long>(top)))) / denom;
        std::cout << "sharpness ratio = " << ratio.to_string(6) << ", target constant "
                  << pred.target_constant.to_string() << "\n";
    }

    Json meta;
    meta["generator"] = "extremal";
    meta["h"] = h;
    meta["a"] = a;
    meta["l"] = l;
    if (!lift_sizes.empty()) meta["lift"] = lift_sizes;
    std::string text = serialize_instance(inst, meta);
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
    return 0;
}

int run_partition(const std::string& path, const std::string& trace_path, const CommonFlags& f) {
    InstanceFile file = parse_instance(read_file(path));
    PartitionTrace trace = partition_decompose(file.instance, f.cap, f.precision);
    std::string j = trace_to_json(trace);
    if (trace_path.empty())
        std::cout << j;
    else
        write_file(trace_path, j);
    bool certified = trace.mu_monotone && trace.identity_sizes && trace.identity_weighted &&
                     trace.all_steps_hold();
    std::cout << "k=" << trace.steps.size() << " parts, mu = [";
    for (size_t i = 0; i < trace.steps.size(); ++i)
        std::cout << (i ? ", " : "") << trace.steps[i].mu.to_string();
    std::cout << "], monotone " << (trace.mu_monotone ? "yes" : "NO") << ", identities "
              << (trace.identity_sizes && trace.identity_weighted ? "exact" : "VIOLATED") << "\n";
    std::cout << "sum mu_j|X_j| = " << trace.sum_mu_weighted.to_string()
              << " = (1/h) sum |A+B_i| = " << trace.avg_growth.to_string() << "\n";
    return certified ? 0 : 1;
}

int run_mu(const std::string& inst_path, const std::string& graph_path, int level,
           const std::string& method, const CommonFlags& f) {
    std::optional<HypercubeGraph> g;
    if (!graph_path.empty())
        g = parse_graph(read_file(graph_path));
    else if (!inst_path.empty())
        g = build_addition_graph(parse_instance(read_file(inst_path)).instance);
    else
        throw ParseError("mu: needs an instance path or --graph");
    if (level < 0 || level > g->h()) throw ParseError("mu: level out of range");

    auto show = [&](const MagnificationResult& r, const char* tag) {
        std::cout << "mu_" << level << " (" << tag << ") = " << r.value.to_string()
                  << ", achiever {";
        for (size_t i = 0; i < r.achiever.size(); ++i)
            std::cout << (i ? ", " : "") << g->vert(r.achiever[i]).display(r.achiever[i]);
        std::cout << "}\n";
    };
    if (method == "brute") {
        show(mu_bruteforce(*g, level, f.cap), "brute");
        return 0;
    }
    if (method == "matching") {
        show(mu_matching(*g, level), "matching");
        return 0;
    }
    if (method != "both") throw ParseError("mu: --method must be brute, matching or both");
    auto b = mu_bruteforce(*g, level, f.cap);
    auto m = mu_matching(*g, level);
    show(b, "brute");
    show(m, "matching");
    bool agree = b.value == m.value;
    std::cout << (agree ? "methods agree" : "METHODS DISAGREE (bug surface)") << "\n";
    return agree ? 0 : 1;
}

int run_sqcomm(const std::string& inst_path, const std::string& graph_path,
               const std::string& product_path, const std::string& channel_text,
               const std::string& removed_text, bool also_bruteforce) {
    std::optional<SumsetInstance> inst;
    std::optional<HypercubeGraph> g;
    if (!graph_path.empty())
        g = parse_graph(read_file(graph_path));
    else if (!inst_path.empty())
        inst = parse_instance(read_file(inst_path)).instance;
    else
        throw ParseError("sqcomm: needs an instance path or --graph");

    std::string built = g ? "graph file" : "addition graph";
    if (!removed_text.empty()) {
        if (!inst) throw ParseError("sqcomm: --removed needs an instance, not a graph file");
        GSet e = parse_element_list(*inst, removed_text, "--removed");
        g = removed_component_graph(*inst, e).graph;
        built = "removed-component graph (|E| = " + std::to_string(e.size()) + ")";
    } else if (!g) {
        g = build_addition_graph(*inst);
    }

    if (!channel_text.empty()) {
        Json j;
        try {
            j = Json::parse(channel_text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("--channel: invalid JSON: ") + e.what());
        }
        if (!j.contains("I") || !j.contains("Iprime") || !j.contains("X") || !j.contains("Y"))
            throw ParseError("--channel needs keys I, Iprime, X, Y");
        auto members = [&](const Json& arr) {
            std::vector<int> out;
            for (const auto& v : arr) out.push_back(v.get<int>());
            return out;
        };
        IndexSet i = IndexSet::from_members(g->h(), members(j["I"]));
        IndexSet ip = IndexSet::from_members(g->h(), members(j["Iprime"]));
        auto resolve = [&](const Json& arr, uint32_t mask, const char* what) {
            std::vector<int> out;
            for (const auto& v : arr) {
                int vid = -1;
                if (v.is_string()) {
                    for (int cand : g->class_members(mask))
                        if (g->vert(cand).name == v.get<std::string>()) vid = cand;
                } else {
                    Element e;
                    for (const auto& c : v) e.push_back(c.get<int64_t>());
                    if (!inst) throw ParseError("--channel: vector vertices need an instance");
                    vid = g->find_payload(mask, reduce(inst->spec(), e));
                }
                if (vid < 0) throw ParseError(std::string(what) + ": vertex not found in class");
                out.push_back(vid);
            }
            return out;
        };
        g = build_channel(*g, i, ip, resolve(j["X"], i.mask, "--channel X"),
                          resolve(j["Y"], ip.mask, "--channel Y"));
        built += " -> channel";
    }

    if (!product_path.empty()) {
        HypercubeGraph other =
            build_addition_graph(parse_instance(read_file(product_path)).instance);
        g = hypercube_product(*g, other);
        built += " (x) addition graph of " + product_path;
    }

    std::cout << "checking " << built << ": " << g->num_vertices() << " vertices, "
              << g->num_edges() << " edges\n";
    auto fail = check_square_commutativity(*g);
    if (also_bruteforce) {
        auto slow = check_square_commutativity_bruteforce(*g);
        bool agree = fail.has_value() == slow.has_value();
        std::cout << "exponential cross-check: " << (agree ? "agrees" : "DISAGREES (bug)") << "\n";
        if (!agree) return 1;
    }
    if (!fail) {
        std::cout << "square commutative: pass\n";
        return 0;
    }
    Json w;
    w["direction"] = fail->upward ? "upward" : "downward";
    w["chain"] = Json::array({IndexSet(g->h(), fail->i_mask).to_string(),
                              IndexSet(g->h(), fail->ip_mask).to_string(),
                              IndexSet(g->h(), fail->ipp_mask).to_string()});
    w["fixed"] = Json::array({g->vert(fail->fixed_low).display(fail->fixed_low),
                              g->vert(fail->fixed_high).display(fail->fixed_high)});
    Json viol = Json::array(), nbhd = Json::array();
    for (int v : fail->violator) viol.push_back(g->vert(v).display(v));
    for (int v : fail->neighborhood) nbhd.push_back(g->vert(v).display(v));
    w["hall_violator"] = viol;
    w["neighborhood"] = nbhd;
    std::cout << "square commutative: FAIL\n" << w.dump(2) << "\n";
    return 1;
}

int run_corpus(const std::string& out_dir, CorpusParams params, const std::string& moduli_text) {
    if (!moduli_text.empty()) {
        params.moduli_menu.clear();
        std::stringstream ss(moduli_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) params.moduli_menu.push_back(std::stoll(tok));
        if (params.moduli_menu.empty()) throw ParseError("--moduli: empty menu");
    }
    std::filesystem::create_directories(out_dir);
    auto corpus = generate_corpus(params);
    for (size_t i = 0; i < corpus.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "inst_%03zu.json", i);
        Json meta;
        meta["generator"] = "corpus";
        meta["seed"] = params.seed;
        meta["index"] = i;
        write_file((std::filesystem::path(out_dir) / name).string(),
                   serialize_instance(corpus[i], meta));
    }
    Json manifest;
    manifest["schema"] = "sumsets-corpus/1";
    manifest["count"] = params.count;
    manifest["h_min"] = params.h_min;
    manifest["h_max"] = params.h_max;
    manifest["dim_min"] = params.dim_min;
    manifest["dim_max"] = params.dim_max;
    manifest["moduli_menu"] = params.moduli_menu;
    manifest["max_a"] = params.max_a;
    manifest["max_b"] = params.max_b;
    manifest["z_range"] = params.z_range;
    manifest["seed"] = params.seed;
    write_file((std::filesystem::path(out_dir) / "manifest.json").string(),
               manifest.dump(2) + "\n");
    std::cout << "wrote " << corpus.size() << " instances to " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of sumset growth bounds on finite instances"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "Run theorem checks on an instance file");
    std::string v_path, v_eps = "1/2", v_out, v_csv;
    std::vector<std::string> v_checks = {"thm11",  "prop31", "thm21",  "thm22", "eps",
                                         "cor518", "thm515", "thm517", "lemma513"};
    CommonFlags v_flags;
    size_t v_samples = 50, v_e_max = 3, v_e_samples = 10;
    bool v_timing = false;
    verify->add_option("instance", v_path, "Instance file (JSON)")->required();
    verify->add_option("--checks", v_checks, "Subset of checks to run")->delimiter(',');
    verify->add_option("--eps", v_eps, "Epsilon (rational p/q) for the dense-subset check");
    verify->add_option("--samples", v_samples,
                       "Sample count for thm21 when enumeration is infeasible");
    verify->add_option("--e-max-size", v_e_max, "cor518: max |E| to consider");
    verify->add_option("--e-samples", v_e_samples, "cor518: how many E to test");
    verify->add_option("--out", v_out, "Write the JSON report here (CSV lands next to it)");
    verify->add_option("--csv", v_csv, "Write the CSV projection here");
    verify->add_flag("--timing", v_timing,
                     "Record wall-clock ms per check (breaks byte-stability)");
    std::vector<std::string> v_alphas;
    verify->add_option("--alpha", v_alphas,
                       "Override the tight alpha_i with larger rationals (one per B_i)")
        ->delimiter(',');
    add_common(verify, v_flags);

    auto* extremal = app.add_subcommand("extremal", "Generate the extremal construction");
    extremal->set_help_flag("--help", "Print help");  // frees -h for the parameter below
    int e_h = 2;
    int64_t e_a = 2, e_l = 2;
    std::string e_lift, e_out;
    size_t e_budget = size_t(64) << 20, e_precision = 128;
    extremal->add_option("--h", e_h, "Number of summand sets (h >= 2)")->required();
    extremal->add_option("--a", e_a, "Grid parameter, divisible by h-1")->required();
    extremal->add_option("--l", e_l, "Scale parameter (b = l a)")->required();
    extremal->add_option("--lift", e_lift, "Free-generator block sizes n1,...,nh");
    extremal->add_option("--out", e_out, "Write the instance file here (default stdout)");
    extremal->add_option("--budget", e_budget, "Memory budget in stored coordinates");
    extremal->add_option("--precision", e_precision, "Interval precision in bits");

    auto* partition = app.add_subcommand("partition", "Run the removed-component partition loop");
    std::string p_path, p_trace;
    CommonFlags p_flags;
    partition->add_option("instance", p_path, "Instance file (JSON)")->required();
    partition->add_option("--trace", p_trace, "Write the trace JSON here (default stdout)");
    add_common(partition, p_flags);

    auto* mu = app.add_subcommand("mu", "Compute a magnification ratio");
    std::string m_path, m_graph, m_method = "both";
    int m_level = 1;
    CommonFlags m_flags;
    mu->add_option("instance", m_path, "Instance file (JSON)");
    mu->add_option("--graph", m_graph, "Graph file instead of an instance");
    mu->add_option("--level", m_level, "Layer index i of mu_i");
    mu->add_option("--method", m_method, "brute | matching | both");
    add_common(mu, m_flags);

    auto* sq = app.add_subcommand("sqcomm", "Decide square commutativity");
    std::string s_path, s_graph, s_product, s_channel, s_removed;
    bool s_brute = false;
    sq->add_option("instance", s_path, "Instance file (JSON)");
    sq->add_option("--graph", s_graph, "Graph file instead of an instance");
    sq->add_option("--product", s_product, "Product with the addition graph of this instance");
    sq->add_option("--channel", s_channel,
                   R"(Channel spec: {"I":[...],"Iprime":[...],"X":[...],"Y":[...]})");
    sq->add_option("--removed", s_removed, "Removed-component E as a JSON list of vectors");
    sq->add_flag("--bruteforce", s_brute, "Cross-check with the exponential definition");

    auto* corpus = app.add_subcommand("corpus", "Generate the seeded random instance corpus");
    std::string c_dir, c_moduli;
    CorpusParams c_params;
    corpus->add_option("--out-dir", c_dir, "Directory for instance files")->required();
    corpus->add_option("--count", c_params.count, "Number of instances (default 200)");
    corpus->add_option("--h-min", c_params.h_min, "Smallest h (default 1)");
    corpus->add_option("--h-max", c_params.h_max, "Largest h (default 3)");
    corpus->add_option("--max-a", c_params.max_a, "Largest |A| target (default 8)");
    corpus->add_option("--max-b", c_params.max_b, "Largest |B_i| target (default 4)");
    corpus->add_option("--seed", c_params.seed, "Corpus seed (default 24601)");
    corpus->add_option("--moduli", c_moduli, "Comma-separated moduli menu (default 0,2..12)");

    try {
        app.parse(argc, argv);
        if (verify->parsed())
            return run_verify(v_path, v_checks, v_flags, v_eps, v_samples, v_e_max, v_e_samples,
                              v_out, v_csv, v_timing, v_alphas);
        if (extremal->parsed())
            return run_extremal(e_h, e_a, e_l, e_lift, e_out, e_budget, e_precision);
        if (partition->parsed()) return run_partition(p_path, p_trace, p_flags);
        if (mu->parsed()) return run_mu(m_path, m_graph, m_level, m_method, m_flags);
        if (sq->parsed())
            return run_sqcomm(s_path, s_graph, s_product, s_channel, s_removed, s_brute);
        if (corpus->parsed()) return run_corpus(c_dir, c_params, c_moduli);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const CapExceededError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const BudgetExceededError& e) {
        std::cerr << "memory budget: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "zsf/arithmetic.hpp"
#include "zsf/io.hpp"
#include "zsf/verify.hpp"

namespace zsf::cli {

namespace {

using nlohmann::json;

enum class Format { text, json, csv };

struct Common {
    std::string group_spec;
    std::string group_file;
    std::string seq_text;
    std::string seq_file;
    std::string format;
    int jobs = 1;
    std::size_t budget = 0;
};

struct Context {
    std::ostream& out;
    GroupPtr group;
    Format format = Format::text;
    std::size_t budget = default_budget();
    int jobs = 1;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError("invalid JSON in '" + path + "': " + e.what());
    }
}

Format parse_format(const std::string& s, Format fallback) {
    if (s.empty()) return fallback;
    if (s == "text") return Format::text;
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    throw ValidationError("unknown format '" + s + "'");
}

Context make_context(const Common& c, std::ostream& out, Format fallback) {
    Context ctx{out, nullptr};
    ctx.format = parse_format(c.format, fallback);
    if (c.budget > 0) ctx.budget = c.budget;
    ctx.jobs = std::max(1, c.jobs);
    if (!c.group_spec.empty() && !c.group_file.empty()) throw ValidationError("give either --group or --group-file");
    if (!c.group_spec.empty()) {
        ctx.group = std::make_shared<const FiniteGroup>(build_group(c.group_spec));
    } else if (!c.group_file.empty()) {
        json j = read_json_file(c.group_file);
        // a sequence file carries its group
        if (j.contains("group")) j = j.at("group");
        ctx.group = std::make_shared<const FiniteGroup>(group_from_json(j));
    } else if (!c.seq_file.empty()) {
        ctx.group = std::make_shared<const FiniteGroup>(group_from_json(read_json_file(c.seq_file).at("group")));
    } else {
        throw ValidationError("a group is required (--group or --group-file)");
    }
    return ctx;
}

Sequence read_sequence(const Common& c, const Context& ctx) {
    if (!c.seq_text.empty() && !c.seq_file.empty()) throw ValidationError("give either --seq or --seq-file");
    if (!c.seq_file.empty()) return sequence_from_json(read_json_file(c.seq_file), ctx.group);
    if (c.seq_text.empty()) throw ValidationError("a sequence is required (--seq or --seq-file)");
    return parse_sequence(ctx.group, c.seq_text);
}

std::string set_text(const FiniteGroup& g, ElementSet s) {
    std::string out = "{";
    bool first = true;
    s.for_each([&](Element x) {
        if (!first) out += ", ";
        out += g.name(x);
        first = false;
    });
    return out + "}";
}

json set_json(const FiniteGroup& g, ElementSet s) {
    json arr = json::array();
    s.for_each([&](Element x) { arr.push_back(g.name(x)); });
    return arr;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

void add_common(CLI::App* app, Common& c, bool wants_seq, bool parallel) {
    app->add_option("--group", c.group_spec, "group spec: cyclic:n, dihedral:n, dicyclic:n, abelian:AxB");
    app->add_option("--group-file", c.group_file, "group JSON file");
    if (wants_seq) {
        app->add_option("--seq", c.seq_text, "sequence text, e.g. \"t (a t)\" or \"a^[4] t^[2]\"");
        app->add_option("--seq-file", c.seq_file, "sequence JSON file");
    }
    app->add_option("--format", c.format, "json, csv or text");
    app->add_option("--budget", c.budget, "cap on sub-multisets per product table");
    if (parallel) app->add_option("--jobs", c.jobs, "worker threads");
}

// ---- subcommands ----

void cmd_group(const Context& ctx) {
    const FiniteGroup& g = *ctx.group;
    if (ctx.format == Format::json) {
        ctx.out << group_to_json(g).dump() << "\n";
        return;
    }
    ctx.out << "kind: " << to_string(g.kind()) << "\norder: " << g.order() << "\nabelian: " << (g.is_abelian() ? "yes" : "no")
            << "\nelements:";
    for (Element x = 0; x < g.order(); ++x) ctx.out << " " << g.name(x) << "[" << g.element_order(x) << "]";
    ctx.out << "\ncommutator subgroup: " << set_text(g, commutator_subgroup(g))
            << "\nautomorphisms: " << automorphism_group(g).size() << "\n";
}

void cmd_pi(const Context& ctx, const Sequence& s, bool all, int n, bool ordering) {
    const FiniteGroup& g = *ctx.group;
    ElementSet result;
    std::string what = "pi";
    if (n > 0) {
        result = subsequence_products(s, n, ctx.budget);
        what = "Pi_" + std::to_string(n);
    } else if (all) {
        result = subsequence_products(s, std::nullopt, ctx.budget);
        what = "Pi";
    } else {
        result = product_set(s, ctx.budget);
    }
    std::optional<std::vector<Element>> order;
    if (ordering) order = product_ordering(s, std::nullopt, ctx.budget);
    if (ctx.format == Format::json) {
        json j{{"sequence", s.to_string()}, {"set", what}, {"products", set_json(g, result)}};
        if (ordering) {
            if (order) {
                json arr = json::array();
                for (Element x : *order) arr.push_back(g.name(x));
                j["identity_ordering"] = arr;
            } else {
                j["identity_ordering"] = nullptr;
            }
        }
        ctx.out << j.dump() << "\n";
        return;
    }
    ctx.out << set_text(g, result) << "\n";
    if (ordering) {
        if (!order) {
            ctx.out << "no ordering multiplies to the identity\n";
        } else {
            for (std::size_t i = 0; i < order->size(); ++i) ctx.out << (i ? " * " : "") << g.name((*order)[i]);
            ctx.out << " = " << g.name(g.identity()) << "\n";
        }
    }
}

void cmd_classify(const Context& ctx, const Sequence& s) {
    const auto c = classify(s, ctx.budget);
    if (ctx.format == Format::json) {
        ctx.out << json{{"sequence", s.to_string()},
                        {"product_one", c.product_one},
                        {"product_one_free", c.product_one_free},
                        {"squarefree", c.squarefree}}
                       .dump()
                << "\n";
        return;
    }
    auto yn = [](bool b) { return b ? "true" : "false"; };
    ctx.out << "product_one: " << yn(c.product_one) << "\nproduct_one_free: " << yn(c.product_one_free)
            << "\nsquarefree: " << yn(c.squarefree) << "\n";
}

void cmd_atom(const Context& ctx, const Sequence& s) {
    const auto v = is_atom(s, ctx.budget);
    if (ctx.format == Format::json) {
        json j{{"sequence", s.to_string()}, {"product_one", v.is_product_one}, {"atom", v.is_atom}};
        j["split"] = v.split ? json::array({v.split->first.to_string(), v.split->second.to_string()}) : json(nullptr);
        ctx.out << j.dump() << "\n";
        return;
    }
    if (v.is_atom)
        ctx.out << "atom\n";
    else if (!v.is_product_one)
        ctx.out << "not product-one\n";
    else if (v.split)
        ctx.out << "splits: " << v.split->first.to_string() << " | " << v.split->second.to_string() << "\n";
    else
        ctx.out << "not an atom\n";
}

void cmd_davenport(const Context& ctx, bool large, bool small, bool witness) {
    if (!large && !small) large = small = true;
    json j;
    std::ostringstream text;
    if (large) {
        CensusOptions opts;
        opts.jobs = ctx.jobs;
        opts.budget = ctx.budget;
        const auto r = large_davenport(ctx.group, opts);
        j["large"] = r.value;
        j["large_witness"] = r.witness.to_string();
        text << (small ? "large " : "") << r.value << (witness ? "  " + r.witness.to_string() : "") << "\n";
    }
    if (small) {
        const auto r = small_davenport(ctx.group, ctx.budget);
        j["small"] = r.value;
        j["small_witness"] = r.witness.to_string();
        text << (large ? "small " : "") << r.value << (witness ? "  " + r.witness.to_string() : "") << "\n";
    }
    if (ctx.format == Format::json)
        ctx.out << j.dump() << "\n";
    else
        ctx.out << text.str();
}

void cmd_census(const Context& ctx, std::optional<int> length, bool reflections_only, bool reference, bool expand,
                bool timings) {
    CensusOptions opts;
    opts.jobs = ctx.jobs;
    opts.budget = ctx.budget;
    opts.prune = !reference;
    if (reflections_only) opts.allowed = reflections(*ctx.group);
    const auto census = max_atom_census(ctx.group, length, opts);
    if (ctx.format == Format::text) {
        ctx.out << "length " << census.length << ": " << census.entries.size() << " orbits, " << census.atom_count()
                << " atoms\n";
        for (const auto& e : census.entries) {
            ctx.out << e.representative.to_string() << "  [" << e.orbit_size << "]\n";
            if (expand)
                for (const auto& o : e.orbit) ctx.out << "    " << o.to_string() << "\n";
        }
        return;
    }
    for (const auto& e : census.entries) {
        json j{{"counts", e.representative.counts()},
               {"sequence", e.representative.to_string()},
               {"orbit_size", e.orbit_size}};
        if (expand) {
            json arr = json::array();
            for (const auto& o : e.orbit) arr.push_back(o.to_string());
            j["orbit"] = arr;
        }
        if (timings) j["verdict_time_ms"] = e.verdict_time_ms;
        ctx.out << j.dump() << "\n";
    }
}

int cmd_verify(const Context& ctx, const std::string& statement) {
    const auto st = parse_statement(statement);
    if (!st) throw ValidationError("unknown statement '" + statement + "'");
    const auto r = verify_characterization(ctx.group, *st, ctx.jobs);
    auto list = [](const std::vector<Sequence>& v) {
        json arr = json::array();
        for (const auto& s : v) arr.push_back(s.to_string());
        return arr;
    };
    json j{{"statement", r.statement},
           {"group", r.group},
           {"family_size", r.family_size},
           {"census_size", r.census_size},
           {"equal", r.equal},
           {"missing", list(r.missing)},
           {"extra", list(r.extra)},
           {"in_particular_counterexamples", list(r.in_particular_counterexamples)}};
    if (ctx.format == Format::text)
        ctx.out << r.statement << " over " << r.group << ": family " << r.family_size << ", census " << r.census_size
                << ", " << (r.equal ? "equal" : "MISMATCH") << "\n";
    else
        ctx.out << j.dump() << "\n";
    return r.equal ? kOk : kVerificationFailed;
}

void cmd_lengths(const Context& ctx, const Sequence& s) {
    const auto l = length_set(s, ctx.budget);
    if (ctx.format == Format::json)
        ctx.out << json{{"sequence", s.to_string()}, {"lengths", l.elements()}}.dump() << "\n";
    else
        ctx.out << l.to_string() << "\n";
}

void cmd_unions(const Context& ctx, int k, std::optional<int> max_len) {
    const int len = max_len ? *max_len : k * davenport_value(ctx.group);
    const auto r = unions_bounded(ctx.group, k, len, ctx.jobs, ctx.budget);
    if (ctx.format == Format::json)
        ctx.out << json{{"k", r.k}, {"max_len", r.max_len}, {"lengths", r.lengths.elements()}, {"examined", r.examined}}.dump()
                << "\n";
    else
        ctx.out << "U_" << r.k << " restricted to |B| <= " << r.max_len << ": " << r.lengths.to_string() << "\n";
}

void cmd_rho_lambda(const Context& ctx, bool primary_is_rho, int k_from, int k_to) {
    if (k_from < 1 || k_to < k_from) throw ValidationError("k range must satisfy 1 <= k <= k-max");
    auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
    if (ctx.format == Format::csv)
        ctx.out << "k,lambda_lower,lambda_exact,rho_lower,rho_exact,rho_upper,witness\n";
    for (int k = k_from; k <= k_to; ++k) {
        const auto r = rho(ctx.group, k, ctx.budget);
        const auto l = lambda(ctx.group, k, ctx.budget);
        const auto& primary = primary_is_rho ? r : l;
        const std::string witness =
            primary.lower_witness ? primary.lower_witness->b.to_string() : std::string();
        switch (ctx.format) {
            case Format::csv:
                ctx.out << k << "," << l.lower << "," << opt(l.exact) << "," << r.lower << "," << opt(r.exact) << ","
                        << r.upper << "," << csv_field(witness) << "\n";
                break;
            case Format::json: {
                json j{{"k", k},
                       {"lambda_lower", l.lower},
                       {"lambda_upper", l.upper},
                       {"lambda_exact", l.exact ? json(*l.exact) : json(nullptr)},
                       {"lambda_source", l.source},
                       {"rho_lower", r.lower},
                       {"rho_upper", r.upper},
                       {"rho_exact", r.exact ? json(*r.exact) : json(nullptr)},
                       {"rho_source", r.source}};
                if (primary.lower_witness)
                    j["witness"] = {{"sequence", witness}, {"attained", primary.lower_witness->attained}};
                ctx.out << j.dump() << "\n";
                break;
            }
            case Format::text: {
                auto show = [&](const char* name, const RhoLambdaReport& x) {
                    ctx.out << name << "_" << k << " = ";
                    if (x.exact)
                        ctx.out << *x.exact;
                    else
                        ctx.out << "[" << x.lower << ", " << x.upper << "]";
                    ctx.out << "  (" << x.source << ")";
                };
                show(primary_is_rho ? "rho" : "lambda", primary);
                if (!witness.empty()) ctx.out << "  witness " << witness << " attains " << primary.lower_witness->attained;
                ctx.out << "\n";
                break;
            }
        }
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Product-one sequences over finite groups", "zsf"};
    app.require_subcommand(1);
    Common c;

    auto* group = app.add_subcommand("group", "describe a group");
    add_common(group, c, false, false);

    bool pi_all = false, pi_ordering = false;
    int pi_n = 0;
    auto* pi = app.add_subcommand("pi", "product set of a sequence");
    add_common(pi, c, true, false);
    pi->add_flag("--all", pi_all, "products over all non-empty subsequences");
    pi->add_option("-n", pi_n, "products over subsequences of length n");
    pi->add_flag("--ordering", pi_ordering, "print an ordering multiplying to the identity");

    auto* cls = app.add_subcommand("classify", "product-one / product-one free / squarefree");
    add_common(cls, c, true, false);

    auto* atom = app.add_subcommand("atom", "minimal product-one test with a split witness");
    add_common(atom, c, true, false);

    bool large = false, small = false, witness = false;
    auto* dav = app.add_subcommand("davenport", "large and small Davenport constants");
    add_common(dav, c, false, true);
    dav->add_flag("--large", large, "D(G)");
    dav->add_flag("--small", small, "d(G)");
    dav->add_flag("--witness", witness, "print a witness sequence");

    std::optional<int> census_len;
    bool refl = false, reference = false, expand = false, timings = false;
    auto* census = app.add_subcommand("census", "atoms of a given length, one line per orbit");
    add_common(census, c, false, true);
    census->add_option("--length", census_len, "sequence length (default D(G))");
    census->add_flag("--reflections", refl, "restrict terms to the reflection coset");
    census->add_flag("--reference", reference, "unpruned reference enumerator");
    census->add_flag("--expand-orbits", expand, "list every orbit member");
    census->add_flag("--timings", timings, "include per-verdict timings (not deterministic)");

    std::string statement;
    auto* verify = app.add_subcommand("verify", "check a characterization against a census");
    add_common(verify, c, false, true);
    verify->add_option("--statement", statement, "thm4.1 thm4.2 thm4.3 prop3.2 prop3.3 prop3.2-inparticular prop3.3-inparticular")
        ->required();

    auto* lengths = app.add_subcommand("lengths", "set of factorization lengths");
    add_common(lengths, c, true, false);

    int uk = 1;
    std::optional<int> max_len;
    auto* unions = app.add_subcommand("unions", "union of length sets containing k, over bounded sequences");
    add_common(unions, c, false, true);
    unions->add_option("-k", uk, "k")->required();
    unions->add_option("--max-len", max_len, "largest |B| examined (default k*D(G))");

    int k_single = 0, k_max = 0;
    auto* rho_cmd = app.add_subcommand("rho", "rho_k: exact value or bounds with a witness");
    auto* lambda_cmd = app.add_subcommand("lambda", "lambda_k: exact value or bounds");
    for (auto* sub : {rho_cmd, lambda_cmd}) {
        add_common(sub, c, false, false);
        sub->add_option("-k", k_single, "single k");
        sub->add_option("--k-max", k_max, "table for k = 1..k-max");
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (*group) {
            cmd_group(make_context(c, out, Format::text));
        } else if (*pi || *cls || *atom || *lengths) {
            const Context ctx = make_context(c, out, Format::text);
            const Sequence s = read_sequence(c, ctx);
            if (*pi) cmd_pi(ctx, s, pi_all, pi_n, pi_ordering);
            if (*cls) cmd_classify(ctx, s);
            if (*atom) cmd_atom(ctx, s);
            if (*lengths) cmd_lengths(ctx, s);
        } else if (*dav) {
            cmd_davenport(make_context(c, out, Format::text), large, small, witness);
        } else if (*census) {
            cmd_census(make_context(c, out, Format::json), census_len, refl, reference, expand, timings);
        } else if (*verify) {
            return cmd_verify(make_context(c, out, Format::json), statement);
        } else if (*unions) {
            cmd_unions(make_context(c, out, Format::text), uk, max_len);
        } else if (*rho_cmd || *lambda_cmd) {
            const int from = k_max > 0 ? 1 : k_single;
            const int to = k_max > 0 ? k_max : k_single;
            cmd_rho_lambda(make_context(c, out, Format::csv), static_cast<bool>(*rho_cmd), from, to);
        }
    } catch (const CapacityError& e) {
        err << "capacity: " << e.what() << "\n";
        return kCapacity;
    } catch (const ValidationError& e) {
        err << "invalid input: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return kUsage;
    }
    return kOk;
}

}  // namespace zsf::cli

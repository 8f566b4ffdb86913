#pragma once

/**
 * @file cli.hpp
 * @brief The `idem` command line: every library operation as a subcommand.
 *
 * Exit codes: 0 success, 1 domain error (a JSON object
 * {"error": {"code", "message"}} is written to stdout), 2 usage error.
 * Streams are JSON Lines; output depends only on the flags and --seed.
 */

#include "digit_tables.hpp"
#include "fourier.hpp"
#include "fuglede.hpp"
#include "oracle.hpp"
#include "ramanujan.hpp"
#include "sampling.hpp"
#include "zn_core.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <ostream>
#include <sstream>

namespace idem::cli {

using json = nlohmann::ordered_json;

/// Parses "1,2,5", "0..4" (inclusive) or mixes such as "0..2,7"; "" is empty.
inline std::vector<std::int64_t> parse_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    auto to_int = [&](const std::string& s) -> std::int64_t {
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) throw CLI::ValidationError("list", "bad integer '" + s + "'");
        return v;
    };
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (auto dots = item.find(".."); dots != std::string::npos) {
            const auto lo = to_int(item.substr(0, dots));
            const auto hi = to_int(item.substr(dots + 2));
            for (auto v = lo; v <= hi; ++v) out.push_back(v);
        } else {
            out.push_back(to_int(item));
        }
    }
    return out;
}

inline json to_json(const index_set& s) {
    return json{{"N", s.modulus()}, {"members", s.members()}};
}

inline json to_json(complex_t z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const signal& x) {
    json a = json::array();
    for (auto v : x.values()) a.push_back(to_json(v));
    return a;
}

inline json to_json(const digit_table& t) {
    return json{{"p", t.p()}, {"M", t.m()}, {"rows", t.rows()}};
}

inline std::string members_text(const index_set& s) {
    std::string out;
    for (auto x : s.members()) {
        if (!out.empty()) out += ' ';
        out += std::to_string(x);
    }
    return out;
}

struct context {
    std::ostream& out;
    std::string format;  ///< empty: the command's default (CSV for ramanujan, JSON otherwise)
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

inline void emit_set(context& c, const index_set& s) {
    if (c.format == "csv")
        c.out << s.modulus() << ',' << members_text(s) << '\n';
    else
        c.out << to_json(s).dump() << '\n';
}

inline index_set parse_set(std::int64_t n, const std::string& text) {
    return index_set(n, parse_list(text));
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Convolution idempotents on Z_N with prescribed zero sets", "idem"};
    app.require_subcommand(1);
    app.fallthrough();
    context ctx{out, {}, 1, 1};
    app.add_option("--format", ctx.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", ctx.seed, "Seed for randomized commands");
    app.add_option("--jobs", ctx.jobs, "Worker threads where supported")->check(CLI::PositiveNumber);

    std::function<void()> action;
    std::int64_t n = 0;
    std::string divisors_text, set_text, zeros_text, mode = "exact", k_text, j_text, frag_text;
    std::int64_t max_size = -1, q = 0, oversample = 16;
    bool allow_large = false, bracelet_reps = false;
    std::size_t max_results = 0;

    auto add_n = [&](CLI::App* sub) { sub->add_option("--N", n, "Modulus")->required()->check(CLI::PositiveNumber); };

    // zeroset ---------------------------------------------------------------
    auto* zs = app.add_subcommand("zeroset", "Prime-power zero-set problem via digit tables");
    zs->require_subcommand(1);
    {
        auto* en = zs->add_subcommand("enumerate", "All J solving P_N(D), JSON lines in lex order");
        add_n(en);
        en->add_option("--divisors", divisors_text, "Divisor set D, e.g. 2,4")->required();
        en->add_option("--max-size", max_size, "Largest |J| to emit (default N)");
        en->add_flag("--bracelet-reps", bracelet_reps, "Only emit canonical bracelet representatives");
        en->callback([&] {
            action = [&] {
                const modulus_context mctx(n);
                const auto mc = pivots_from_divisors(mctx, divisor_spec(n, parse_list(divisors_text)));
                auto sols = enumerate_solutions(mctx, mc, max_size < 0 ? std::nullopt : std::optional(max_size));
                for (const auto& s : sols)
                    if (!bracelet_reps || canonical_bracelet_rep(s) == s) emit_set(ctx, s);
            };
        });

        auto* ck = zs->add_subcommand("check", "Is J a solution of P_N(D)? Prints the block certificate");
        add_n(ck);
        ck->add_option("--divisors", divisors_text, "Divisor set D")->required();
        ck->add_option("--set", set_text, "Index set J")->required();
        ck->callback([&] {
            action = [&] {
                const modulus_context mctx(n);
                const auto mc = pivots_from_divisors(mctx, divisor_spec(n, parse_list(divisors_text)));
                const auto res = is_solution(mctx, parse_set(n, set_text), mc);
                json cert = json::array();
                for (const auto& b : res.certificate) cert.push_back(b.members());
                json o{{"solution", res.solution}, {"certificate", cert}};
                if (!res.solution) o["reason"] = res.reason;
                out << o.dump() << '\n';
            };
        });

        auto* zr = zs->add_subcommand("zero-set", "Z(h_J), D(h_J) and the gcd-class structure flag");
        add_n(zr);
        zr->add_option("--set", set_text, "Spectrum J")->required();
        zr->add_option("--mode", mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
        zr->callback([&] {
            action = [&] {
                const idempotent h(parse_set(n, set_text));
                const auto rep = zero_set(h, mode == "exact" ? zero_mode::exact : zero_mode::floating);
                out << json{{"zero_set", to_json(rep.zero_set)},
                            {"zero_divisors", rep.zero_divisors.divisors()},
                            {"structure_ok", rep.structure_ok},
                            {"h", to_json(h.values())}}
                           .dump()
                    << '\n';
            };
        });

        auto* tb = zs->add_subcommand("table", "Digit table of J with its pivot columns");
        add_n(tb);
        tb->add_option("--set", set_text, "Index set J")->required();
        tb->callback([&] {
            action = [&] {
                const modulus_context mctx(n);
                const auto t = from_index_set(mctx, parse_set(n, set_text));
                auto o = to_json(t);
                o["pivots"] = pivot_columns(t).columns();
                o["conforming"] = is_conforming(t);
                out << o.dump() << '\n';
            };
        });
    }

    // oracle ----------------------------------------------------------------
    auto* orc = app.add_subcommand("oracle", "Exhaustive search with exact arithmetic");
    orc->require_subcommand(1);
    {
        auto* sv = orc->add_subcommand("solve", "All J whose idempotent vanishes on Z (or has zero set exactly Z)");
        add_n(sv);
        sv->add_option("--zeros", zeros_text, "Zero set Z")->required();
        sv->add_option("--mode", mode, "exact or at-least")->check(CLI::IsMember({"exact", "at-least"}));
        sv->add_option("--max-size", max_size, "Largest |J|");
        sv->add_flag("--allow-large", allow_large, "Lift the N <= 24 guard");
        sv->callback([&] {
            action = [&] {
                oracle_options opt{max_size, allow_large, ctx.jobs};
                const auto m = mode == "exact" ? oracle_mode::exact_zero_set : oracle_mode::vanish_at_least;
                for (const auto& s : brute_force_solutions(n, parse_set(n, zeros_text), m, opt)) emit_set(ctx, s);
            };
        });

        auto* cp = orc->add_subcommand("compare", "Digit-table enumeration against the oracle");
        add_n(cp);
        cp->add_option("--divisors", divisors_text, "Divisor set D")->required();
        cp->add_flag("--allow-large", allow_large, "Lift the N <= 24 guard");
        cp->callback([&] {
            action = [&] {
                const modulus_context mctx(n);
                const auto mc = pivots_from_divisors(mctx, divisor_spec(n, parse_list(divisors_text)));
                oracle_options opt{-1, allow_large, ctx.jobs};
                const auto rep = compare_with_theorem(mctx, mc, opt);
                json only_o = json::array(), only_t = json::array();
                for (const auto& s : rep.only_oracle) only_o.push_back(s.members());
                for (const auto& s : rep.only_theorem) only_t.push_back(s.members());
                out << json{{"N", rep.n},
                            {"pivots", rep.mc.columns()},
                            {"oracle_count", rep.oracle_count},
                            {"theorem_count", rep.theorem_count},
                            {"duplicates", rep.duplicates},
                            {"only_oracle", only_o},
                            {"only_theorem", only_t},
                            {"pass", rep.pass()}}
                           .dump()
                    << '\n';
            };
        });
    }

    // ramanujan -------------------------------------------------------------
    auto* ram = app.add_subcommand("ramanujan", "Ramanujan sums");
    ram->require_subcommand(1);
    {
        auto* ev = ram->add_subcommand("eval", "c_q(k) for a list or range of k (CSV q,k,value by default)");
        ev->add_option("--q", q, "q >= 1")->required();
        ev->add_option("--k", k_text, "k values, e.g. 0..4")->required();
        ev->callback([&] {
            action = [&] {
                const auto ks = parse_list(k_text);
                if (ctx.format == "json") {
                    json a = json::array();
                    for (auto k : ks) a.push_back(json{{"q", q}, {"k", k}, {"value", ramanujan_direct(q, k)}});
                    out << a.dump() << '\n';
                } else {
                    for (auto k : ks) out << q << ',' << k << ',' << ramanujan_direct(q, k) << '\n';
                }
            };
        });
    }

    // sampling --------------------------------------------------------------
    auto* smp = app.add_subcommand("sampling", "Multicoset sampling design and simulation");
    smp->require_subcommand(1);
    {
        auto* ds = smp->add_subcommand("design", "Minimum-rate alias-free pattern for a fragment set");
        add_n(ds);
        ds->add_option("--fragments", frag_text, "Fragment set F")->required();
        ds->callback([&] {
            action = [&] {
                const auto d = design_pattern(fragment_set(parse_list(frag_text)), n);
                out << json{{"J", d.pattern.members()},
                            {"N", n},
                            {"rate", d.rate},
                            {"required_zeros", required_zero_set(fragment_set(parse_list(frag_text)), n).members()},
                            {"h", to_json(d.h.values())}}
                           .dump()
                    << '\n';
            };
        });

        auto* sm = smp->add_subcommand("simulate", "Discrete alias-cancellation experiment");
        add_n(sm);
        sm->add_option("--fragments", frag_text, "Fragment set F")->required();
        sm->add_option("--J", j_text, "Sampling offsets J")->required();
        sm->add_option("--oversample", oversample, "Frequency bins per unit")->check(CLI::PositiveNumber);
        sm->callback([&] {
            action = [&] {
                const auto rep = simulate(fragment_set(parse_list(frag_text)), parse_set(n, j_text),
                                          simulation_params{oversample, ctx.seed});
                if (ctx.format == "csv") {
                    out << "bin,frequency,original_re,original_im,sampled_re,sampled_im\n";
                    out << std::setprecision(17);
                    for (std::size_t b = 0; b < rep.spectrum.size(); ++b)
                        out << b << ',' << static_cast<double>(b) / static_cast<double>(oversample) << ','
                            << rep.spectrum[b].real() << ',' << rep.spectrum[b].imag() << ','
                            << rep.sampled[b].real() << ',' << rep.sampled[b].imag() << '\n';
                    return;
                }
                out << json{{"N", n},
                            {"J", parse_list(j_text)},
                            {"seed", ctx.seed},
                            {"oversample", oversample},
                            {"max_error", rep.max_error},
                            {"total_alias_energy", rep.total_alias_energy},
                            {"alias_energy", rep.alias_energy}}
                           .dump()
                    << '\n';
            };
        });
    }

    // fuglede ---------------------------------------------------------------
    auto* fg = app.add_subcommand("fuglede", "Tiling and spectral sets");
    fg->require_subcommand(1);
    {
        auto* tl = fg->add_subcommand("tiles", "Does J tile Z_N with K?");
        add_n(tl);
        tl->add_option("--J", j_text, "Set J")->required();
        tl->add_option("--K", set_text, "Set K")->required();
        tl->callback([&] {
            action = [&] {
                out << json{{"tiles", tiles(parse_set(n, j_text), parse_set(n, set_text))}}.dump() << '\n';
            };
        });

        auto* pt = fg->add_subcommand("partners", "Tiling partners of J, JSON lines");
        add_n(pt);
        pt->add_option("--J", j_text, "Set J")->required();
        pt->add_option("--max", max_results, "Stop after this many (0 = all)");
        pt->callback([&] {
            action = [&] {
                for (const auto& k : find_tiling_partners(parse_set(n, j_text), max_results)) emit_set(ctx, k);
            };
        });

        auto* sp = fg->add_subcommand("spectral", "Is J spectral? Prints a witness row set");
        add_n(sp);
        sp->add_option("--J", j_text, "Set J")->required();
        sp->callback([&] {
            action = [&] {
                const auto r = is_spectral(parse_set(n, j_text));
                json o{{"spectral", r.spectral}};
                if (r.spectral) {
                    o["witness"] = r.witness.members();
                    o["gram_error"] = r.gram_error;
                }
                out << o.dump() << '\n';
            };
        });

        auto* rp = fg->add_subcommand("report", "Spectral vs tiling over all small sets (prime-power N)");
        add_n(rp);
        rp->add_option("--max-size", max_size, "Largest |J| (default N)");
        rp->add_flag("--bracelet-reps", bracelet_reps, "Check one set per bracelet");
        rp->callback([&] {
            action = [&] {
                const auto rep = run_fuglede_report(modulus_context(n), max_size < 0 ? n : max_size, bracelet_reps);
                json dis = json::array();
                for (const auto& d : rep.disagreements)
                    dis.push_back(json{{"J", d.set.members()}, {"spectral", d.spectral}, {"tiles", d.tiles}});
                out << json{{"N", rep.n},
                            {"max_size", rep.max_set_size},
                            {"bracelet_reps", rep.bracelet_filtered},
                            {"checked", rep.checked},
                            {"spectral", rep.spectral_count},
                            {"tiling", rep.tiling_count},
                            {"disagreements", dis}}
                           .dump()
                    << '\n';
            };
        });
    }

    // bracelet --------------------------------------------------------------
    auto* br = app.add_subcommand("bracelet", "Dihedral orbits of index sets");
    br->require_subcommand(1);
    {
        auto* orb = br->add_subcommand("orbit", "All sets in the bracelet of J, JSON lines");
        add_n(orb);
        orb->add_option("--set", set_text, "Index set")->required();
        orb->callback([&] {
            action = [&] {
                for (const auto& s : bracelet(parse_set(n, set_text))) emit_set(ctx, s);
            };
        });
        auto* can = br->add_subcommand("canonical", "Lex-least member of the bracelet");
        add_n(can);
        can->add_option("--set", set_text, "Index set")->required();
        can->callback([&] { action = [&] { emit_set(ctx, canonical_bracelet_rep(parse_set(n, set_text))); }; });
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();  // program name
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (action) action();
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        out << json{{"error", {{"code", e.code()}, {"message", e.what()}}}}.dump() << '\n';
        return 1;
    } catch (const std::exception& e) {
        out << json{{"error", {{"code", "internal-error"}, {"message", e.what()}}}}.dump() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace idem::cli

#pragma once

// Command-line front end. run() never exits the process; it returns the
// exit code so tests can drive it with string streams.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.

#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arith.hpp"
#include "diagram.hpp"
#include "slopes.hpp"
#include "tables.hpp"

namespace twobridge::cli {

namespace detail {

inline std::vector<SlopeResult> compute_all(const std::vector<TwoBridgeLink>& links) {
    std::vector<SlopeResult> out;
    out.reserve(links.size());
    for (const auto& l : links) out.push_back(compute_slopes(l));
    return out;
}

inline std::string edge_string(const Complex& cx, const TypedEdge& e) {
    return std::string(1, to_char(e.etype)) + (e.sign > 0 ? "+" : "-") + " " + cx.label(e.tail) + " -> " +
           cx.label(e.head);
}

inline int paths(const TwoBridgeLink& link, DiagramKind kind, bool as_json, std::ostream& out) {
    const Diagrams dg = build_diagrams(link);
    const Complex& cx = dg.get(kind);
    const auto found = minimal_paths(cx, Fraction::infinity(), link.fraction());
    if (as_json) {
        nlohmann::ordered_json doc;
        doc["p"] = link.p();
        doc["q"] = link.q();
        doc["diagram"] = to_string(kind);
        doc["quads"] = dg.chain.size();
        doc["paths"] = nlohmann::ordered_json::array();
        for (const auto& p : found) {
            nlohmann::ordered_json jp;
            jp["vertices"] = nlohmann::ordered_json::array();
            for (const auto& v : p.vertices()) jp["vertices"].push_back(cx.label(v));
            jp["edges"] = nlohmann::ordered_json::array();
            for (const auto& e : p.edges) {
                jp["edges"].push_back({{"type", std::string(1, to_char(e.etype))},
                                       {"sign", e.sign},
                                       {"g", {e.g.a(), e.g.b(), e.g.c(), e.g.d()}}});
            }
            if (kind == DiagramKind::dt) {
                const MForm m = m_form_improved(cx, p);
                jp["mform"] = {m.x, m.y, m.z};
            } else if (kind == DiagramKind::d1 && p.count(EdgeType::C) > 0) {
                const SForm s = s_form(cx, p);
                jp["sform"] = {s.x, s.y};
            }
            doc["paths"].push_back(std::move(jp));
        }
        out << doc.dump(2) << "\n";
        return 0;
    }
    out << link.to_string() << " " << to_string(kind) << ": " << found.size() << " minimal paths over "
        << dg.chain.size() << " quads\n";
    for (std::size_t i = 0; i < found.size(); ++i) {
        const auto& p = found[i];
        out << "path " << i + 1 << ":";
        for (const auto& v : p.vertices()) out << " " << cx.label(v);
        if (kind == DiagramKind::dt) {
            const MForm m = m_form_improved(cx, p);
            out << "  M = (" << m.x << ", " << m.y << ", " << m.z << ")";
        } else if (kind == DiagramKind::d1 && p.count(EdgeType::C) > 0) {
            const SForm s = s_form(cx, p);
            out << "  s-form = (" << s.x << ", " << s.y << ")";
        }
        out << "\n";
        for (const auto& e : p.edges) out << "  " << edge_string(cx, e) << "\n";
    }
    return 0;
}

struct OracleTally {
    std::size_t dt_paths = 0, d1_paths = 0, failures = 0;
};

inline OracleTally oracle_check(Int max_crossings, std::ostream& err) {
    OracleTally tally;
    for (const auto& link : enumerate_links(max_crossings, true)) {
        const Diagrams dg = build_diagrams(link);
        for (const auto& p : minimal_paths(dg.dt, Fraction::infinity(), link.fraction())) {
            ++tally.dt_paths;
            const MForm a = m_form_improved(dg.dt, p);
            const MForm b = m_lash_oracle(p);
            if (a != b) {
                ++tally.failures;
                err << link.to_string() << ": improved (" << a.x << ", " << a.y << ", " << a.z << ") vs table ("
                    << b.x << ", " << b.y << ", " << b.z << ")\n";
            }
        }
        for (const auto& p : minimal_paths(dg.d1, Fraction::infinity(), link.fraction())) {
            if (p.count(EdgeType::C) == 0) continue;
            ++tally.d1_paths;
            if (!(s_form_trace(dg.d1, p).m == m_table_symbolic(p))) {
                ++tally.failures;
                err << link.to_string() << ": s-form disagrees with the table on a D1 path\n";
            }
        }
    }
    return tally;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Boundary slopes of 2-bridge links", "twobridge"};
    app.require_subcommand(1);

    std::string pq;
    std::string format = "text";
    Int max_crossings = 10;
    bool identify_mirrors = true;
    std::string diagram = "dt";

    auto* slopes = app.add_subcommand("slopes", "Boundary slope families of one link");
    slopes->add_option("--pq", pq, "Link fraction p/q")->required();
    slopes->add_option("--format", format, "json, csv, tex or text")->check(CLI::IsMember({"json", "csv", "tex", "text"}));

    auto* enumerate = app.add_subcommand("enumerate", "List 2-bridge links up to a crossing number");
    enumerate->add_option("--max-crossings", max_crossings, "Crossing bound")->required()->check(CLI::Range(2, 16));
    enumerate->add_flag("--identify-mirrors,!--no-identify-mirrors", identify_mirrors,
                        "Treat a link and its mirror image as one (default on)");

    std::string table_format = "tex";
    auto* table = app.add_subcommand("table", "Slope tables for every link up to a crossing number");
    table->add_option("--max-crossings", max_crossings, "Crossing bound")->required()->check(CLI::Range(2, 16));
    table->add_option("--format", table_format, "json, csv, tex or text")->check(CLI::IsMember({"json", "csv", "tex", "text"}));

    auto* verify = app.add_subcommand("verify", "Check computed slopes against the built-in tables");
    verify->add_option("--max-crossings", max_crossings, "Crossing bound (default 10)")->check(CLI::Range(2, 10));

    auto* paths = app.add_subcommand("paths", "Minimal edge paths from 1/0 to p/q");
    paths->add_option("--pq", pq, "Link fraction p/q")->required();
    paths->add_option("--diagram", diagram, "dt, d0 or d1")->check(CLI::IsMember({"dt", "d0", "d1"}));
    paths->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

    auto* oracle = app.add_subcommand("oracle-check", "Compare the improved algorithm with the per-edge table");
    oracle->add_option("--max-crossings", max_crossings, "Crossing bound")->required()->check(CLI::Range(2, 14));

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        if (app.get_subcommands().empty()) err << app.help();
        return 2;
    }

    try {
        if (slopes->parsed()) {
            const TwoBridgeLink link = parse_link(pq);
            const SlopeResult res = compute_slopes(link);
            for (const auto& d : res.diagnostics) err << "note: " << d << "\n";
            out << emit(std::span(&res, 1), parse_format(format));
            return 0;
        }
        if (enumerate->parsed()) {
            for (const auto& link : enumerate_links(max_crossings, identify_mirrors)) {
                out << crossing_number(link) << "\t" << link.to_string() << "\t" << rolfsen_name(link).value_or("-") << "\n";
            }
            return 0;
        }
        if (table->parsed()) {
            const auto results = detail::compute_all(enumerate_links(max_crossings, true));
            out << emit(results, parse_format(table_format));
            return 0;
        }
        if (verify->parsed()) {
            const TableReport rep = verify_corpus(max_crossings);
            for (const auto& row : rep.rows) {
                if (row.status == RowStatus::match) continue;
                err << row.link.to_string() << ": " << to_string(row.status) << "\n";
                for (const auto& f : row.not_computed) err << "  tabled, not computed: " << format_family(f) << "\n";
                for (const auto& f : row.not_tabled) err << "  computed, not tabled: " << format_family(f) << "\n";
            }
            out << rep.summary() << "\n";
            return rep.all_match() ? 0 : 1;
        }
        if (paths->parsed()) {
            const TwoBridgeLink link = parse_link(pq);
            const DiagramKind kind =
                diagram == "d0" ? DiagramKind::d0 : (diagram == "d1" ? DiagramKind::d1 : DiagramKind::dt);
            return detail::paths(link, kind, format == "json", out);
        }
        if (oracle->parsed()) {
            const auto t = detail::oracle_check(max_crossings, err);
            out << t.dt_paths << " Dt paths, " << t.d1_paths << " D1 paths with C edges, " << t.failures
                << " disagreements\n";
            return t.failures == 0 ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace twobridge::cli

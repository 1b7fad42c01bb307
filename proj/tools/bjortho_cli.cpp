// Command line front end. Every subcommand prints one JSON document on
// stdout. Exit codes: 0 decided (or decided positive for predicates),
// 1 decided negative, 2 input error, 3 inconclusive or unsupported
// instance, 4 internal verification failure.

#include <bjortho/repro.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using bjortho::Json;

void emit(const Json& doc) { std::cout << doc.dump() << "\n"; }

bjortho::Space space_from_arg(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{')
        return bjortho::space_from_json(bjortho::parse_json_text(arg, "space argument"));
    return bjortho::resolve_space(Json(arg));
}

Json doc_from_arg(const std::string& arg, const char* what) {
    if (!arg.empty() && arg.front() == '{') return bjortho::parse_json_text(arg, what);
    return bjortho::load_json_file(arg);
}

bjortho::Point parse_point_arg(const std::string& text, const char* what) {
    bjortho::VecQ v;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        auto q = bjortho::try_parse_rational(token);
        if (!q)
            throw std::invalid_argument(std::string(what) + ": bad rational component '" + token +
                                        "' in '" + text + "'");
        v.push_back(*q);
    }
    if (v.empty()) throw std::invalid_argument(std::string(what) + ": empty vector");
    return bjortho::Point(std::move(v));
}

std::vector<bjortho::Point> parse_family_arg(const std::string& text, const char* what) {
    std::vector<bjortho::Point> pts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, ';')) pts.push_back(parse_point_arg(part, what));
    if (pts.empty()) throw std::invalid_argument(std::string(what) + ": empty family");
    return pts;
}

Json approx_of(const bjortho::Rational& q) { return bjortho::to_double(q); }

Json approx_of(const bjortho::Point& p) {
    Json a = Json::array();
    for (const auto& c : p.x) a.push_back(bjortho::to_double(c));
    return a;
}

Json run_report(const bjortho::repro::ScenarioReport& rep, double ms) {
    Json doc;
    doc["scenario"] = rep.name;
    doc["pass"] = rep.pass;
    doc["elapsed_ms"] = ms;
    doc["digest"] = bjortho::digest_of_json(rep.details);
    doc["details"] = rep.details;
    return doc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact decisions for polyhedral and euclidean norm geometry"};
    app.require_subcommand(1);

    bool approx = false;
    int threads = 0;
    app.add_flag("--approx", approx, "annotate headline values with decimal approximations");
    app.add_option("--threads", threads, "cap on concurrent feasibility subproblems")
        ->check(CLI::Range(1, 256))
        ->each([](const std::string& v) { setenv("BJORTHO_THREADS", v.c_str(), 1); });

    int exit_code = 0;

    // ---- space ------------------------------------------------------------
    auto* sp = app.add_subcommand("space", "inspect a normed space");
    std::string sp_space, sp_x;

    auto* sp_validate = sp->add_subcommand("validate", "check structural invariants");
    sp_validate->add_option("--space", sp_space, "builtin:NAME, file path, or inline JSON")->required();
    sp_validate->callback([&] {
        const auto s = space_from_arg(sp_space);
        const auto bad = bjortho::validate(s);
        Json doc;
        doc["space"] = s.label;
        doc["valid"] = bad.empty();
        doc["violations"] = bad;
        emit(doc);
        exit_code = bad.empty() ? 0 : 1;
    });

    auto* sp_facets = sp->add_subcommand("facets", "print the facet functionals");
    sp_facets->add_option("--space", sp_space, "builtin:NAME, file path, or inline JSON")->required();
    sp_facets->callback([&] {
        const auto s = space_from_arg(sp_space);
        emit(bjortho::space_document(s));
    });

    auto* sp_norm = sp->add_subcommand("norm", "evaluate the norm at a point");
    sp_norm->add_option("--space", sp_space)->required();
    sp_norm->add_option("--x", sp_x, "comma separated rational coordinates")->required();
    sp_norm->callback([&] {
        const auto s = space_from_arg(sp_space);
        const auto p = parse_point_arg(sp_x, "--x");
        Json doc;
        if (s.kind == bjortho::SpaceKind::euclidean) {
            const auto n2 = bjortho::norm_sq(s, p);
            doc["norm_sq"] = bjortho::json_of(n2);
            if (approx) doc["approx"] = approx_of(n2);
        } else {
            const auto n = bjortho::norm(s, p);
            doc["norm"] = bjortho::json_of(n);
            if (approx) doc["approx"] = approx_of(n);
        }
        emit(doc);
    });

    // ---- ortho ------------------------------------------------------------
    auto* ortho = app.add_subcommand("ortho", "vector orthogonality decisions");
    std::string or_space, or_x, or_y, or_family;
    size_t or_n = 0;

    auto* or_test = ortho->add_subcommand("test", "decide whether x is orthogonal to y");
    or_test->add_option("--space", or_space)->required();
    or_test->add_option("--x", or_x)->required();
    or_test->add_option("--y", or_y)->required();
    or_test->callback([&] {
        const auto s = space_from_arg(or_space);
        const bool orth = bjortho::is_bj_orthogonal(s, parse_point_arg(or_x, "--x"),
                                                    parse_point_arg(or_y, "--y"));
        emit(Json{{"orthogonal", orth}});
        exit_code = orth ? 0 : 1;
    });

    auto* or_set = ortho->add_subcommand("set", "norming functionals carrying the orthogonality set of x");
    or_set->add_option("--space", or_space)->required();
    or_set->add_option("--x", or_x)->required();
    or_set->callback([&] {
        const auto s = space_from_arg(or_space);
        const auto os = bjortho::ortho_set(s, parse_point_arg(or_x, "--x"));
        Json doc;
        doc["base"] = bjortho::json_of(os.base);
        Json act = Json::array();
        for (const auto& f : os.active) act.push_back(bjortho::json_of(f));
        doc["active"] = std::move(act);
        emit(doc);
    });

    auto* or_cover = ortho->add_subcommand("cover", "decide whether the family's orthogonality sets cover");
    or_cover->add_option("--space", or_space)->required();
    or_cover->add_option("--family", or_family, "semicolon separated points")->required();
    or_cover->callback([&] {
        const auto s = space_from_arg(or_space);
        const auto cert = bjortho::covers(s, parse_family_arg(or_family, "--family"));
        Json doc = bjortho::json_of(cert);
        if (approx && cert.witness) doc["witness_approx"] = approx_of(*cert.witness);
        emit(doc);
        exit_code = cert.verdict == bjortho::CoverageVerdict::covered ? 0 : 1;
    });

    auto* or_pn = ortho->add_subcommand("pn", "decide the n-family covering property");
    or_pn->add_option("--space", or_space)->required();
    or_pn->add_option("--n", or_n)->required()->check(CLI::PositiveNumber);
    or_pn->callback([&] {
        const auto s = space_from_arg(or_space);
        const auto cert = bjortho::has_property_pn(s, or_n);
        const bool has = cert.verdict == bjortho::PnVerdict::has_pn;
        Json doc;
        doc["has_pn"] = has;
        if (!has) {
            Json pts = Json::array();
            for (const auto& p : cert.covering_points) pts.push_back(bjortho::json_of(p));
            doc["family"] = std::move(pts);
        }
        emit(doc);
        exit_code = has ? 0 : 1;
    });

    auto* or_mincover = ortho->add_subcommand("mincover", "smallest covering family of vertex classes");
    or_mincover->add_option("--space", or_space)->required();
    or_mincover->callback([&] {
        const auto s = space_from_arg(or_space);
        emit(bjortho::json_of(bjortho::min_covering_number(s)));
    });

    // ---- op ---------------------------------------------------------------
    auto* op = app.add_subcommand("op", "operator level decisions");
    std::string op_op, op_t, op_a, op_spec;
    size_t op_m = 0;

    auto* op_norm_cmd = op->add_subcommand("norm", "operator norm over the domain ball");
    op_norm_cmd->add_option("--op", op_op, "operator JSON (file path or inline)")->required();
    op_norm_cmd->callback([&] {
        const auto t = bjortho::operator_from_json(doc_from_arg(op_op, "operator"));
        const auto n = bjortho::op_norm_value(t);
        Json doc;
        doc[bjortho::op_norm_is_squared(t) ? "op_norm_sq" : "op_norm"] = bjortho::json_of(n);
        if (approx) doc["approx"] = approx_of(n);
        emit(doc);
    });

    auto* op_mt = op->add_subcommand("mt", "norm attainment set as a cell complex");
    op_mt->add_option("--op", op_op)->required();
    op_mt->callback([&] {
        const auto t = bjortho::operator_from_json(doc_from_arg(op_op, "operator"));
        emit(bjortho::json_of(bjortho::norm_attainment_set(t)));
    });

    auto* op_comp = op->add_subcommand("components", "attainment components, spherical and projective");
    op_comp->add_option("--op", op_op)->required();
    op_comp->callback([&] {
        const auto t = bjortho::operator_from_json(doc_from_arg(op_op, "operator"));
        const auto [sphere, projective] = bjortho::mt_projective_components(t);
        emit(Json{{"sphere", sphere}, {"projective", projective}});
    });

    auto* op_orth = op->add_subcommand("ortho", "decide operator orthogonality");
    op_orth->add_option("--t", op_t)->required();
    op_orth->add_option("--a", op_a)->required();
    op_orth->callback([&] {
        const auto t = bjortho::operator_from_json(doc_from_arg(op_t, "operator t"));
        const auto a = bjortho::operator_from_json(doc_from_arg(op_a, "operator a"));
        const bool orth = bjortho::op_is_bj_orthogonal(t, a);
        emit(Json{{"orthogonal", orth}});
        exit_code = orth ? 0 : 1;
    });

    auto* op_wit = op->add_subcommand("witness", "attainment point witnessing the orthogonality");
    op_wit->add_option("--t", op_t)->required();
    op_wit->add_option("--a", op_a)->required();
    op_wit->callback([&] {
        const auto t = bjortho::operator_from_json(doc_from_arg(op_t, "operator t"));
        const auto a = bjortho::operator_from_json(doc_from_arg(op_a, "operator a"));
        const auto w = bjortho::witness_exists(t, a);
        Json doc;
        doc["witness_found"] = w.has_value();
        if (w) {
            doc["witness"] = bjortho::json_of(*w);
            if (approx) doc["witness_approx"] = approx_of(*w);
        }
        emit(doc);
        exit_code = w ? 0 : 1;
    });

    auto* op_cx = op->add_subcommand("counterexample", "build and verify an orthogonal perturbation without witnesses");
    op_cx->add_option("--t", op_t)->required();
    op_cx->add_option("--spec", op_spec, "construction data JSON (file path or inline)")->required();
    op_cx->callback([&] {
        const auto t = bjortho::operator_from_json(doc_from_arg(op_t, "operator t"));
        const auto spec = bjortho::counterexample_spec_from_json(doc_from_arg(op_spec, "construction spec"));
        const auto a = bjortho::construct_counterexample(t, spec);
        Json doc;
        doc["perturbation"] = bjortho::json_of(a.matrix);
        doc["verified"] = true;
        emit(doc);
    });

    auto* op_bs2d = op->add_subcommand("bs2d", "pointwise witness property for a 2d domain operator");
    op_bs2d->add_option("--op", op_op)->required();
    op_bs2d->callback([&] {
        const auto t = bjortho::operator_from_json(doc_from_arg(op_op, "operator"));
        const bool bs = bjortho::bs_check_2d(t);
        emit(Json{{"bs_property", bs}});
        exit_code = bs ? 0 : 1;
    });

    auto* op_cor = op->add_subcommand("corollary-pn", "covering-property route to a witness-free perturbation");
    op_cor->add_option("--t", op_t)->required();
    op_cor->add_option("--m", op_m, "class budget for the covering property")->required()->check(CLI::PositiveNumber);
    op_cor->add_option("--spec", op_spec)->required();
    op_cor->callback([&] {
        const auto t = bjortho::operator_from_json(doc_from_arg(op_t, "operator t"));
        const auto spec = bjortho::counterexample_spec_from_json(doc_from_arg(op_spec, "construction spec"));
        const auto res = bjortho::corollary_pn_bs(t, op_m, spec);
        emit(bjortho::json_of(res));
        switch (res.status) {
            case bjortho::CorollaryStatus::violates_bs: exit_code = 0; break;
            case bjortho::CorollaryStatus::instance_unsatisfied: exit_code = 1; break;
            case bjortho::CorollaryStatus::inconclusive: exit_code = 3; break;
        }
    });

    // ---- repro ------------------------------------------------------------
    auto* repro = app.add_subcommand("repro", "rerun a packaged scenario");
    std::string repro_filter;
    auto run_one = [&](const std::string& name) {
        const auto start = std::chrono::steady_clock::now();
        const auto rep = bjortho::repro::run_scenario(name);
        const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
        emit(run_report(rep, ms.count()));
        return rep.pass;
    };
    for (const auto& entry : bjortho::repro::scenario_catalog()) {
        auto* cmd = repro->add_subcommand(entry.name);
        const std::string name = entry.name;
        cmd->callback([&, name] { exit_code = run_one(name) ? 0 : 1; });
    }
    auto* repro_all = repro->add_subcommand("all", "run every scenario");
    repro_all->add_option("--filter", repro_filter, "only scenarios whose name contains this substring");
    repro_all->callback([&] {
        bool ok = true;
        size_t ran = 0;
        for (const auto& entry : bjortho::repro::scenario_catalog()) {
            if (!repro_filter.empty() && std::string(entry.name).find(repro_filter) == std::string::npos)
                continue;
            ++ran;
            ok = run_one(entry.name) && ok;
        }
        if (ran == 0) throw std::invalid_argument("filter matched no scenario: '" + repro_filter + "'");
        exit_code = ok ? 0 : 1;
    });
    repro->require_subcommand(1);

    // Let --approx/--threads appear after the subcommand too.
    const std::function<void(CLI::App*)> allow_globals = [&](CLI::App* cmd) {
        cmd->fallthrough();
        for (auto* sub : cmd->get_subcommands(std::function<bool(CLI::App*)>{})) allow_globals(sub);
    };
    allow_globals(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const bjortho::unsupported_instance& e) {
        std::cerr << Json{{"error", e.what()}}.dump() << "\n";
        return 3;
    } catch (const bjortho::hypothesis_violation& e) {
        std::cerr << Json{{"error", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << Json{{"error", e.what()}}.dump() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << Json{{"error", e.what()}}.dump() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << Json{{"error", e.what()}}.dump() << "\n";
        return 4;
    }
    return exit_code;
}

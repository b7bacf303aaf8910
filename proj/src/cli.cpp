#include "rpqwn/cli.hpp"

#include "rpqwn/bracket.hpp"
#include "rpqwn/errors.hpp"
#include "rpqwn/parser.hpp"
#include "rpqwn/poisson.hpp"
#include "rpqwn/vacuum.hpp"
#include "rpqwn/weyl.hpp"
#include "rpqwn/winf.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <sstream>
#include <variant>

namespace rpqwn {

namespace {

long long parse_integer(const std::string& text) {
    std::size_t used = 0;
    long long value = 0;
    try {
        value = std::stoll(text, &used);
    } catch (const std::exception&) {
        throw DomainError("'" + text + "' is not an integer");
    }
    if (used != text.size()) throw DomainError("'" + text + "' is not an integer");
    return value;
}

std::map<std::string, Rational> parse_bindings(const std::vector<std::string>& raw) {
    std::map<std::string, Rational> out;
    for (const auto& item : raw) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw DomainError("binding '" + item + "' must look like name=value");
        out[item.substr(0, eq)] = parse_rational(item.substr(eq + 1));
    }
    return out;
}

struct Range {
    long long lo = 0;
    long long hi = 0;
};

// "n=2..6,k=-4..4" -> named inclusive ranges.
std::map<std::string, Range> parse_ranges(const std::string& spec) {
    std::map<std::string, Range> out;
    if (spec.empty()) return out;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto eq = part.find('=');
        const auto dots = part.find("..");
        if (eq == std::string::npos || eq == 0 || dots == std::string::npos || dots < eq)
            throw DomainError("range '" + part + "' must look like name=lo..hi");
        Range r;
        r.lo = parse_integer(part.substr(eq + 1, dots - eq - 1));
        r.hi = parse_integer(part.substr(dots + 2));
        if (r.lo > r.hi) throw DomainError("range '" + part + "' is empty");
        out[part.substr(0, eq)] = r;
    }
    return out;
}

BracketFamily need_family(const std::string& name) {
    const auto f = family_from_name(name);
    if (!f) throw DomainError("unknown family '" + name + "'");
    return *f;
}

Expr arg_to_expr(const std::string& text) {
    const ParseOutcome outcome = lower(parse_input(text));
    if (std::holds_alternative<Expr>(outcome)) return std::get<Expr>(outcome);
    const auto& req = std::get<BracketRequest>(outcome);
    const auto fam = family_from_name(req.family);
    if (!fam)
        throw ParseError("unknown family '" + req.family + "'", req.family_span.line,
                         req.family_span.col);
    return bracket_exprs(*fam, req.lhs, req.rhs);
}

std::string first_violations(const std::vector<std::string>& all, std::size_t limit = 3) {
    std::string out;
    for (std::size_t i = 0; i < all.size() && i < limit; ++i) {
        if (!out.empty()) out += " | ";
        out += all[i];
    }
    if (all.size() > limit) out += " | ... (" + std::to_string(all.size()) + " total)";
    return out;
}

void run_bracket(const std::string& family, const std::string& expr_a,
                 const std::string& expr_b, Report& report) {
    const BracketFamily fam = need_family(family);
    report.family = family_name(fam);
    report.inputs["expr_a"] = expr_a;
    report.inputs["expr_b"] = expr_b;
    const Expr a = arg_to_expr(expr_a);
    const Expr b = arg_to_expr(expr_b);
    const Expr result = bracket_exprs(fam, a, b);
    report.result_expr = render_expr(result);
    const bool anti = (bracket_exprs(fam, b, a) + result).is_zero();
    report.add_check("antisymmetry", anti);
}

void run_vacuum(const std::string& family, const std::string& expr,
                const std::vector<std::string>& bind_raw, Report& report) {
    const BracketFamily fam = need_family(family);
    report.family = family_name(fam);
    report.inputs["expr"] = expr;
    report.inputs["bind"] = bind_raw;
    const auto bindings = parse_bindings(bind_raw);
    const VacuumResult res = vacuum_expectation(fam, arg_to_expr(expr));
    Scalar value = res.value;
    if (!bindings.empty()) value = value.substitute(bindings);
    report.result_expr = value.render();
    if (res.singular)
        report.add_status("renormalization-regular", CheckStatus::FLAGGED_SINGULAR,
                          res.value.render());
    else
        report.add_check("renormalization-regular", true);
}

void run_nogo(long long n, const std::vector<std::string>& bind_raw, Report& report) {
    report.family = family_name(BracketFamily::C_RENORM);
    report.inputs["n"] = n;
    report.inputs["bind"] = bind_raw;
    const GramGate gate = gram_gate(n, parse_bindings(bind_raw));
    report.add_check("gram-hermitian", true);
    report.add_status("d1-closed-form", CheckStatus::SYMBOLIC, gate.d1.render());
    report.add_status("d2-closed-form", CheckStatus::SYMBOLIC, gate.d2.render());
    if (gate.d1_value)
        report.add_check("d1-nonnegative", *gate.d1_value >= 0,
                         render_rational(*gate.d1_value));
    else
        report.add_status("d1-nonnegative", CheckStatus::SYMBOLIC, gate.d1.render());
    if (gate.d2_value)
        report.add_check("d2-nonnegative", *gate.d2_value >= 0,
                         render_rational(*gate.d2_value));
    else
        report.add_status("d2-nonnegative", CheckStatus::SYMBOLIC, gate.d2.render());
}

void run_phi(long long n, const std::vector<std::string>& bind_raw, bool all_ones,
             Report& report) {
    report.family = family_name(BracketFamily::PHI_RENORM);
    report.inputs["n"] = n;
    report.inputs["bind"] = bind_raw;
    report.inputs["all_ones"] = all_ones;
    const PhiConditions pc = phi_conditions(n, parse_bindings(bind_raw), all_ones);
    report.add_check("moment-nonnegativity", pc.c1,
                     "I_" + std::to_string(2 * n - 1) + " = " + render_rational(pc.i_2n1));
    report.add_check("moment-interpolation-equality", pc.c2,
                     render_rational(pc.i_2n2 * pc.i_2n2) + " vs " +
                         render_rational(pc.i_2n1 * pc.i_2n3));
    report.add_check("moment-domination", pc.c3,
                     render_rational(pc.i_2n1 * pc.i_n1 * pc.i_n1) + " vs " +
                         render_rational(pc.i_2n1 * pc.i_2n3));
}

void run_iterate(long long n, long long depth, const std::vector<std::string>& bind_raw,
                 Report& report) {
    report.family = family_name(BracketFamily::C_RENORM);
    report.inputs["n"] = n;
    report.inputs["depth"] = depth;
    report.inputs["bind"] = bind_raw;
    if (depth < 1 || depth > 64) throw DomainError("depth must be in [1, 64]");
    Expr e = iterated_C(BracketFamily::C_RENORM, n, static_cast<int>(depth));
    const auto bindings = parse_bindings(bind_raw);
    if (!bindings.empty()) e = e.substitute(bindings);
    report.result_expr = render_expr(e);
}

IndexBox box_from_ranges(const std::map<std::string, Range>& ranges,
                         const IndexBox& defaults) {
    IndexBox box = defaults;
    for (const auto& [name, r] : ranges) {
        if (name == "n") {
            box.n_min = r.lo;
            box.n_max = r.hi;
        } else if (name == "k") {
            box.k_min = r.lo;
            box.k_max = r.hi;
        } else {
            throw DomainError("unknown box dimension '" + name + "'");
        }
    }
    return box;
}

void run_jacobi(const std::string& family, const std::string& box_spec, Report& report) {
    const BracketFamily fam = need_family(family);
    report.family = family_name(fam);
    const IndexBox defaults = algebra_of(fam) == FamilyTag::WINF
                                  ? IndexBox{2, 6, -4, 4}
                                  : IndexBox{0, 4, 0, 4};
    const IndexBox box = box_from_ranges(parse_ranges(box_spec), defaults);
    report.inputs["box"] = "n=" + std::to_string(box.n_min) + ".." +
                           std::to_string(box.n_max) + ",k=" + std::to_string(box.k_min) +
                           ".." + std::to_string(box.k_max);
    const auto gens = box_generators(fam, box);
    const JacobiReport jr = jacobi_check(fam, gens);
    report.add_check("jacobi-residual-zero", jr.ok(),
                     jr.ok() ? "triples=" + std::to_string(jr.triples_checked)
                             : jr.violations.front().residual);
    bool anti = true;
    std::string anti_witness;
    for (const auto& a : gens) {
        for (const auto& b : gens) {
            const Expr sum = bracket_generators(fam, a, b) + bracket_generators(fam, b, a);
            if (!sum.is_zero()) {
                anti = false;
                anti_witness = "[" + a.render() + ", " + b.render() + "] + [" + b.render() +
                               ", " + a.render() + "] = " + sum.render();
                break;
            }
        }
        if (!anti) break;
    }
    report.add_check("antisymmetry", anti,
                     anti ? "pairs=" + std::to_string(gens.size() * gens.size())
                          : anti_witness);
}

void run_weyl_verify(long long order, Report& report) {
    report.inputs["order"] = order;
    bool closed_ok = true;
    std::string witness;
    for (long long n = 0; n <= 6 && closed_ok; ++n) {
        for (long long m = 0; m <= 6 && closed_ok; ++m) {
            const std::string word = std::string(static_cast<std::size_t>(n), 'D') +
                                     std::string(static_cast<std::size_t>(m), 'x');
            if (weyl_normal_order(word) != dn_xm_closed_form(n, m)) {
                closed_ok = false;
                witness = "mismatch at (n,m)=(" + std::to_string(n) + "," +
                          std::to_string(m) + ")";
            }
        }
    }
    report.add_check("normal-order-closed-form", closed_ok,
                     closed_ok ? "all n,m <= 6" : witness);

    const WeylElement brute_11 = weyl_normal_order("Dx");
    const WeylElement with_j0 = dn_xm_closed_form(1, 1);
    const WeylElement without_j0 = WeylElement::h(); // the sum started at j = 1
    report.add_check("defining-relation-j0",
                     brute_11 == with_j0 && brute_11 != without_j0,
                     "D*x = " + brute_11.render() + "; dropping the j=0 term leaves " +
                         without_j0.render());

    const ExponentialIdentitiesReport er = verify_exponential_identities(order);
    const std::string up_to = "order " + std::to_string(order);
    report.add_check("combine-exponentials", er.combine_exponentials, up_to);
    report.add_check("exchange-exponentials", er.exchange_exponentials, up_to);
    report.add_check("d-power-past-exponential", er.d_power_past_exponential, up_to);
    report.add_check("x-power-under-exponential", er.x_power_under_exponential, up_to);

    const auto plus = instantiate_white_noise(WhiteNoisePairing::PLUS_MINUS);
    const auto minus = instantiate_white_noise(WhiteNoisePairing::MINUS_PLUS);
    report.add_check("ccr-pairing-plus", plus.ccr_consistent && plus.h_coefficient == 2,
                     "h = +2*delta(t-s)");
    report.add_check("ccr-pairing-minus",
                     minus.ccr_consistent && minus.h_coefficient == -2,
                     "h = -2*delta(t-s)");
}

void run_winf_verify(long long nmax, long long kmax, Report& report) {
    report.inputs["nmax"] = nmax;
    report.inputs["kmax"] = kmax;
    const WinfBoxReport wb = verify_winf_box(nmax, kmax);
    const std::string scope = "tuples=" + std::to_string(wb.tuples_checked);
    report.add_check("dual-path-equality", wb.dual_path_ok,
                     wb.dual_path_ok ? scope : first_violations(wb.violations));
    report.add_check("virasoro-subbox", wb.virasoro_ok,
                     wb.virasoro_ok ? "coefficient k-K" : first_violations(wb.violations));
    report.add_check("involution-compatibility", wb.involution_ok,
                     wb.involution_ok ? scope : first_violations(wb.violations));
}

void run_poisson_verify(const std::string& family, const std::string& box_spec,
                        Report& report) {
    report.inputs["family"] = family;
    const auto ranges = parse_ranges(box_spec);
    PoissonBoxReport pr;
    if (family == "f") {
        long long n_max = 5, k_max = 3;
        for (const auto& [name, r] : ranges) {
            if (name == "n") n_max = r.hi;
            else if (name == "k") k_max = r.hi;
            else throw DomainError("unknown box dimension '" + name + "'");
        }
        report.inputs["box"] = "n=2.." + std::to_string(n_max) + ",k=-" +
                               std::to_string(k_max) + ".." + std::to_string(k_max);
        pr = verify_realizations_f(n_max, k_max);
    } else if (family == "g") {
        long long idx_max = 4;
        for (const auto& [name, r] : ranges) {
            if (name == "n") idx_max = r.hi;
            else throw DomainError("unknown box dimension '" + name + "'");
        }
        report.inputs["box"] = "n=0.." + std::to_string(idx_max);
        pr = verify_realizations_g(idx_max);
    } else {
        throw DomainError("poisson family must be f or g");
    }
    const std::string scope = "pairs=" + std::to_string(pr.pairs_checked);
    report.add_check("closed-form-equality", pr.closed_form_ok,
                     pr.closed_form_ok ? scope : first_violations(pr.violations));
    report.add_check("conjugation-consistency", pr.conjugation_ok,
                     pr.conjugation_ok ? scope : first_violations(pr.violations));
    report.add_check("quantized-structure-constants", pr.quantization_ok,
                     pr.quantization_ok ? scope : first_violations(pr.violations));
}

CheckStatus status_from_name(const std::string& name) {
    for (const CheckStatus s : {CheckStatus::PASS, CheckStatus::FAIL, CheckStatus::SYMBOLIC,
                                CheckStatus::FLAGGED_SINGULAR})
        if (check_status_name(s) == name) return s;
    throw DomainError("unknown check status '" + name + "'");
}

struct SuiteCase {
    std::string name;
    std::vector<std::string> argv;
    int expect_exit = 0;
    std::optional<std::string> expect_result;
    std::vector<std::pair<std::string, CheckStatus>> expect_checks;
};

std::vector<SuiteCase> load_suite(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open suite config '" + path + "'");
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError("suite config is not valid JSON: " + std::string(e.what()));
    }
    const nlohmann::ordered_json* cases = nullptr;
    if (j.is_array()) cases = &j;
    else if (j.is_object() && j.contains("cases") && j["cases"].is_array())
        cases = &j["cases"];
    else
        throw DomainError("suite config must be a case array or {\"cases\": [...]}");

    std::vector<SuiteCase> out;
    for (const auto& c : *cases) {
        if (!c.is_object() || !c.contains("name") || !c["name"].is_string() ||
            !c.contains("command") || !c["command"].is_string() || !c.contains("expect") ||
            !c["expect"].is_object())
            throw DomainError("each case needs string name, string command, object expect");
        SuiteCase sc;
        sc.name = c["name"].get<std::string>();
        sc.argv.push_back(c["command"].get<std::string>());
        if (c.contains("args")) {
            if (!c["args"].is_array()) throw DomainError("case args must be an array");
            for (const auto& a : c["args"]) {
                if (!a.is_string()) throw DomainError("case args must be strings");
                sc.argv.push_back(a.get<std::string>());
            }
        }
        const auto& expect = c["expect"];
        if (!expect.contains("exit") || !expect["exit"].is_number_integer())
            throw DomainError("case expect needs an integer exit");
        sc.expect_exit = expect["exit"].get<int>();
        if (expect.contains("result_expr")) {
            if (!expect["result_expr"].is_string())
                throw DomainError("expect.result_expr must be a string");
            sc.expect_result = expect["result_expr"].get<std::string>();
        }
        if (expect.contains("checks")) {
            if (!expect["checks"].is_array())
                throw DomainError("expect.checks must be an array");
            for (const auto& ec : expect["checks"]) {
                if (!ec.is_object() || !ec.contains("name") || !ec["name"].is_string() ||
                    !ec.contains("status") || !ec["status"].is_string())
                    throw DomainError("expected checks need string name and status");
                sc.expect_checks.emplace_back(
                    ec["name"].get<std::string>(),
                    status_from_name(ec["status"].get<std::string>()));
            }
        }
        out.push_back(std::move(sc));
    }
    return out;
}

void run_suite(const std::string& path, Report& report) {
    report.inputs["config"] = path;
    const auto cases = load_suite(path); // full schema validation happens first
    for (const auto& sc : cases) {
        std::ostringstream sink_out, sink_err;
        Report sub;
        const int code = run_command(sc.argv, sink_out, sink_err, &sub);
        std::string witness;
        if (code != sc.expect_exit)
            witness = "exit " + std::to_string(code) + ", expected " +
                      std::to_string(sc.expect_exit);
        if (witness.empty() && sc.expect_result) {
            const std::string got = sub.result_expr.value_or("");
            if (got != *sc.expect_result)
                witness = "expected '" + *sc.expect_result + "', got '" + got + "'";
        }
        if (witness.empty()) {
            for (const auto& [name, status] : sc.expect_checks) {
                bool found = false;
                for (const auto& ch : sub.checks) {
                    if (ch.name != name) continue;
                    found = true;
                    if (ch.status != status)
                        witness = "check " + name + " is " +
                                  check_status_name(ch.status) + ", expected " +
                                  check_status_name(status);
                    break;
                }
                if (!found && witness.empty()) witness = "check " + name + " missing";
                if (!witness.empty()) break;
            }
        }
        report.add_check(sc.name, witness.empty(), witness);
    }
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err, Report* captured) {
    CLI::App app{"exact operator-algebra verification engine"};
    app.name("rpqwn");
    app.require_subcommand(1);

    std::string json_path;
    std::string family, expr_a, expr_b, box_spec, config_path;
    std::vector<std::string> bind_raw;
    long long n = 2, depth = 1, order = 8, nmax = 6, kmax = 4;
    bool all_ones = false;

    const auto add_json = [&json_path](CLI::App* sub) {
        sub->add_option("--json", json_path, "write the JSON report to this path");
    };

    CLI::App* c_bracket = app.add_subcommand("bracket", "Lie bracket of two expressions");
    c_bracket->add_option("expr_a", expr_a, "left expression")->required();
    c_bracket->add_option("expr_b", expr_b, "right expression")->required();
    c_bracket->add_option("--family", family, "bracket family")->required();
    add_json(c_bracket);

    CLI::App* c_vacuum = app.add_subcommand("vacuum", "vacuum expectation of an expression");
    c_vacuum->add_option("expr", expr_a, "expression")->required();
    c_vacuum->add_option("--family", family, "renormalization family")->required();
    c_vacuum->add_option("--bind", bind_raw, "atom bindings name=value");
    add_json(c_vacuum);

    CLI::App* c_nogo = app.add_subcommand("nogo-gate", "2x2 positivity gate minors");
    c_nogo->add_option("--n", n, "generator degree")->required();
    c_nogo->add_option("--bind", bind_raw, "atom bindings name=value");
    add_json(c_nogo);

    CLI::App* c_phi = app.add_subcommand("phi-conditions", "moment conditions gate");
    c_phi->add_option("--n", n, "generator degree")->required();
    c_phi->add_option("--bind", bind_raw, "moment bindings I_m=value");
    c_phi->add_flag("--all-ones", all_ones, "bind every occurring moment to 1");
    add_json(c_phi);

    CLI::App* c_iter = app.add_subcommand("iterate-c", "iterated commutator chain");
    c_iter->add_option("--n", n, "generator degree")->required();
    c_iter->add_option("--depth", depth, "chain depth")->required();
    c_iter->add_option("--bind", bind_raw, "atom bindings name=value");
    add_json(c_iter);

    CLI::App* c_jacobi = app.add_subcommand("jacobi", "Jacobi and antisymmetry sweep");
    c_jacobi->add_option("--family", family, "bracket family")->required();
    c_jacobi->add_option("--box", box_spec, "index box, e.g. n=0..4,k=0..4");
    add_json(c_jacobi);

    CLI::App* c_weyl = app.add_subcommand("weyl-verify", "normal ordering and exponentials");
    c_weyl->add_option("--order", order, "series truncation order");
    add_json(c_weyl);

    CLI::App* c_winf = app.add_subcommand("winf-verify", "two-branch expansion sweep");
    c_winf->add_option("--nmax", nmax, "upper index bound");
    c_winf->add_option("--kmax", kmax, "exponent bound");
    add_json(c_winf);

    CLI::App* c_poisson = app.add_subcommand("poisson-verify", "classical realizations");
    c_poisson->add_option("--family", family, "f or g")->required();
    c_poisson->add_option("--box", box_spec, "index box");
    add_json(c_poisson);

    CLI::App* c_suite = app.add_subcommand("suite", "run a declarative case list");
    c_suite->add_option("config", config_path, "JSON case list")->required();
    add_json(c_suite);

    std::vector<const char*> argv;
    argv.push_back("rpqwn");
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    Report report;
    const auto start = std::chrono::steady_clock::now();
    try {
        if (app.got_subcommand(c_bracket)) {
            report.command = "bracket";
            run_bracket(family, expr_a, expr_b, report);
        } else if (app.got_subcommand(c_vacuum)) {
            report.command = "vacuum";
            run_vacuum(family, expr_a, bind_raw, report);
        } else if (app.got_subcommand(c_nogo)) {
            report.command = "nogo-gate";
            run_nogo(n, bind_raw, report);
        } else if (app.got_subcommand(c_phi)) {
            report.command = "phi-conditions";
            run_phi(n, bind_raw, all_ones, report);
        } else if (app.got_subcommand(c_iter)) {
            report.command = "iterate-c";
            run_iterate(n, depth, bind_raw, report);
        } else if (app.got_subcommand(c_jacobi)) {
            report.command = "jacobi";
            run_jacobi(family, box_spec, report);
        } else if (app.got_subcommand(c_weyl)) {
            report.command = "weyl-verify";
            run_weyl_verify(order, report);
        } else if (app.got_subcommand(c_winf)) {
            report.command = "winf-verify";
            run_winf_verify(nmax, kmax, report);
        } else if (app.got_subcommand(c_poisson)) {
            report.command = "poisson-verify";
            run_poisson_verify(family, box_spec, report);
        } else if (app.got_subcommand(c_suite)) {
            report.command = "suite";
            run_suite(config_path, report);
        }
    } catch (const EngineError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    report.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();

    out << report.human_text();
    if (!json_path.empty()) {
        std::ofstream jf(json_path);
        if (!jf) {
            err << "error: cannot write JSON report to '" << json_path << "'\n";
            return 2;
        }
        jf << report.to_json().dump(2) << "\n";
    }
    if (captured) *captured = report;
    return report.exit_code();
}

} // namespace rpqwn

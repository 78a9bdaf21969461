#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mplsym/hpl.hpp"

using namespace mplsym;
using json = nlohmann::ordered_json;

namespace {

struct Options {
    std::string alphabet_file;
    int precision = 40;
    int bound = 4;
    bool json = false;
    std::string points;
    bool numeric = false;
};

// Thrown for a failed check so main can return exit status 1.
struct VerificationFailed {
    std::string stage;
};

std::string stage = "setup";

std::vector<std::string> read_alphabet_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw PreconditionViolated("cannot read alphabet file " + path);
    std::vector<std::string> letters;
    std::string line;
    while (std::getline(f, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            tok.erase(0, tok.find_first_not_of(" \t\r"));
            tok.erase(tok.find_last_not_of(" \t\r") + 1);
            if (!tok.empty()) letters.push_back(tok);
        }
    }
    if (letters.empty()) throw PreconditionViolated("alphabet file " + path + " has no letters");
    return letters;
}

RingPtr ring_for(const std::vector<std::string>& texts) {
    std::set<std::string> vars;
    for (const auto& t : texts)
        for (const auto& v : expr_variables(t)) vars.insert(v);
    return make_ring(std::vector<std::string>(vars.begin(), vars.end()));
}

// Parses the expressions over one shared ring and picks the alphabet:
// the file's letters if given, else the letters the expressions need.
struct Session {
    RingPtr ring;
    std::vector<ExprPtr> exprs;
    Alphabet A;
};

Session open_session(const std::vector<std::string>& texts, const Options& o) {
    Session s;
    std::vector<std::string> letters;
    if (!o.alphabet_file.empty()) letters = read_alphabet_file(o.alphabet_file);
    std::vector<std::string> all = texts;
    all.insert(all.end(), letters.begin(), letters.end());
    stage = "parse";
    s.ring = ring_for(all);
    for (const auto& t : texts) s.exprs.push_back(parse_expr(t, s.ring).expr);
    stage = "alphabet";
    if (!letters.empty()) {
        s.A = Alphabet::from_strings(letters, s.ring);
    } else {
        s.A = Alphabet(s.ring);
        for (const auto& e : s.exprs) {
            Alphabet B = expr_alphabet(e, s.ring);
            for (size_t i = 0; i < B.size(); ++i) s.A.add(B.letter(int(i)));
        }
    }
    return s;
}

std::vector<Rational> parse_points(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(0, tok.find_first_not_of(" \t"));
        tok.erase(tok.find_last_not_of(" \t") + 1);
        if (!tok.empty()) out.push_back(parse_rational(tok));
    }
    return out;
}

std::vector<Rational> points_or(const Options& o, std::vector<Rational> dflt) {
    return o.points.empty() ? dflt : parse_points(o.points);
}

json symbol_json(const Symbol& S, const Alphabet& A) {
    json terms = json::array();
    for (const auto& [w, c] : S.terms()) {
        json word = json::array();
        for (int i : w) word.push_back(i);
        terms.push_back({{"word", word}, {"coeff", c.get_str()}});
    }
    return {{"weight", S.weight()}, {"alphabet", A.names()}, {"text", S.to_string(A)}, {"terms", terms}};
}

void emit(const Options& o, const json& j, const std::string& text) {
    if (o.json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

std::string single_variable(const Session& s) {
    if (s.ring->size() > 1) throw PreconditionViolated("numeric evaluation needs at most one variable");
    return s.ring->size() ? s.ring->vars[0] : "";
}

int run_symbol(const std::string& expr, const Options& o) {
    Session s = open_session({expr}, o);
    stage = "symbol";
    Symbol S = symbol_of(s.exprs[0], s.A);
    json j = {{"expression", to_string(s.exprs[0])}, {"symbol", symbol_json(S, s.A)}};
    emit(o, j, S.to_string(s.A) + "\n");
    return 0;
}

json levels_json(const IntegrationResult& r) {
    json levels = json::array();
    for (const auto& l : r.levels) {
        json coeffs = json::array();
        for (const auto& [label, c] : l.coeffs) coeffs.push_back({{"element", label}, {"coeff", c.get_str()}});
        levels.push_back({{"partition", partition_to_string(l.lambda)}, {"coefficients", coeffs}});
    }
    return levels;
}

json fix_json(const FixReport& f, int digits) {
    json pts = json::array(), res = json::array();
    for (const auto& p : f.points) pts.push_back(p.get_str());
    for (const auto& r : f.residuals) res.push_back(format_real(r, 5));
    return {{"constants", to_string(f.constants)},
            {"points", pts},
            {"residuals", res},
            {"max_residual", format_real(f.max_residual, 5)},
            {"precision", digits}};
}

std::string levels_text(const IntegrationResult& r) {
    std::ostringstream os;
    for (const auto& l : r.levels) {
        os << "  " << partition_to_string(l.lambda) << ":";
        if (l.coeffs.empty()) os << " none";
        for (const auto& [label, c] : l.coeffs) os << "  " << c.get_str() << " * " << label;
        os << "\n";
    }
    return os.str();
}

int run_integrate(const std::string& input, const Options& o) {
    bool is_symbol = input.find('[') != std::string::npos;
    Session s;
    Symbol S;
    if (is_symbol) {
        std::vector<std::string> letters;
        if (!o.alphabet_file.empty()) letters = read_alphabet_file(o.alphabet_file);
        std::string flat = input;
        for (char& ch : flat)
            if (ch == '[' || ch == ']' || ch == '|') ch = ' ';
        std::vector<std::string> all = letters;
        all.push_back(flat);
        stage = "parse";
        s.ring = ring_for(all);
        s.A = letters.empty() ? Alphabet(s.ring) : Alphabet::from_strings(letters, s.ring);
        S = parse_symbol(input, s.A, letters.empty());
    } else {
        s = open_session({input}, o);
        stage = "symbol";
        S = symbol_of(s.exprs[0], s.A);
    }
    stage = "integrate";
    AnsatzOptions ao;
    ao.bound = o.bound;
    bool hpl_letters = s.ring->size() == 1 && s.ring->vars[0] == "x";
    Alphabet H = Alphabet::hpl();
    for (size_t i = 0; hpl_letters && i < s.A.size(); ++i)
        hpl_letters = H.find(s.A.letter(int(i)).lifted(H.ring())) >= 0;
    if (hpl_letters && S.weight() <= 4) {
        S = S.relabel([&] {
            std::vector<int> m;
            for (size_t i = 0; i < s.A.size(); ++i) m.push_back(H.find(s.A.letter(int(i)).lifted(H.ring())));
            return m;
        }());
        s.A = H;
        s.ring = H.ring();
        if (!is_symbol) s.exprs[0] = parse_expr(input, s.ring).expr;
    }
    std::string basis = hpl_letters && S.weight() <= 4 ? "hpl" : "default";
    Integrator I(s.A, basis == "hpl" ? hpl_spanning_set() : default_indecomposables(s.A, S.weight(), ao));
    IntegrationResult r = I.integrate(S);
    json j = {{"expression", to_string(r.expression)},
              {"basis", basis},
              {"levels", levels_json(r)},
              {"residual", symbol_json(r.residual, s.A)}};
    std::string text = to_string(r.expression) + "\nlevels:\n" + levels_text(r) +
                       "residual: " + r.residual.to_string(s.A) + "\n";
    if (!is_symbol && r.residual.is_zero() && s.ring->size() == 1 && S.weight() <= 4) {
        stage = "fix_constants";
        Precision P(o.precision);
        std::string var = s.ring->vars[0];
        ExprPtr target = s.exprs[0];
        FixOptions fo;
        fo.digits = o.precision;
        fo.points = points_or(o, {});
        FixReport f;
        try {
            f = fix_constants([&](const Rational& x) { return eval_expr(target, {{var, x}}); }, r.expression,
                              S.weight(), I.indecomposables(), fo);
        } catch (const OutOfRegion& e) {
            j["constant_fixing"] = {{"skipped", e.what()}};
            emit(o, j, text + "constants: not fixed (" + e.what() + ")\n");
            return 0;
        }
        j["expression"] = to_string(f.expression);
        j["constant_fixing"] = fix_json(f, o.precision);
        text = to_string(f.expression) + "\nlevels:\n" + levels_text(r) + "residual: " +
               r.residual.to_string(s.A) + "\nconstants: " + to_string(f.constants) +
               "\nmax residual: " + format_real(f.max_residual, 5) + " over " +
               std::to_string(f.points.size()) + " points\n";
    }
    emit(o, j, text);
    if (!r.residual.is_zero()) throw VerificationFailed{"integrate"};
    return 0;
}

int run_check_identity(const std::string& lhs, const std::string& rhs, const Options& o) {
    Session s = open_session({lhs, rhs}, o);
    stage = "symbol";
    Symbol d = symbol_of(s.exprs[0], s.A) - symbol_of(s.exprs[1], s.A);
    bool sym_equal = d.is_zero();
    json j = {{"symbol_equal", sym_equal}, {"decided_by", "symbol"}};
    std::string text = sym_equal ? "equal (symbol)\n" : "not equal (symbol)\ndifference: " + d.to_string(s.A) + "\n";
    if (!sym_equal) j["difference"] = symbol_json(d, s.A);
    bool ok = sym_equal;
    if (sym_equal && (o.numeric || !o.points.empty())) {
        stage = "numeric";
        Precision P(o.precision);
        std::string var = single_variable(s);
        std::vector<Rational> pts = var.empty() ? std::vector<Rational>{0} : points_or(o, {Rational(1, 4), Rational(1, 3), Rational(1, 2)});
        Real tol = pow(Real(10), -(o.precision - 10));
        json diffs = json::array();
        bool num_equal = true;
        std::ostringstream os;
        for (const auto& x : pts) {
            std::map<std::string, Rational> at;
            if (!var.empty()) at[var] = x;
            Real v = eval_expr(s.exprs[0], at) - eval_expr(s.exprs[1], at);
            num_equal = num_equal && abs(v) < tol;
            diffs.push_back({{"point", x.get_str()}, {"difference", format_real(v, 10)}});
            os << "  " << (var.empty() ? "" : var + " = " + x.get_str() + ": ") << format_real(v, 10) << "\n";
        }
        ok = num_equal;
        j["numeric_equal"] = num_equal;
        j["decided_by"] = "numeric";
        j["numeric"] = diffs;
        text = std::string(num_equal ? "equal (symbol and numeric)\n" : "symbols agree but values differ (numeric)\n") + os.str();
    }
    emit(o, j, text);
    if (!ok) throw VerificationFailed{"check-identity"};
    return 0;
}

int run_hpl_reduce(const std::string& index, const Options& o) {
    stage = "parse";
    std::vector<int> a = parse_index(index);
    stage = "hpl-reduce";
    HplReducer R(o.precision);
    HplReduction r = R.reduce(a);
    stage = "verify";
    const Alphabet& A = R.alphabet();
    bool sym_ok = symbol_of(r.expression, A) == hpl_symbol(a);
    Precision P(o.precision);
    Real tol = pow(Real(10), -25);
    json checks = json::array();
    bool num_ok = true;
    std::ostringstream os;
    for (const auto& x : points_or(o, {Rational(1, 4), Rational(1, 3), Rational(1, 2)})) {
        reset_truncation_order();
        Real d = abs(eval_expr(r.expression, {{"x", x}}) - eval_expr(hpl_expr(a), {{"x", x}}));
        num_ok = num_ok && d < tol;
        checks.push_back({{"point", x.get_str()}, {"difference", format_real(d, 5)}, {"truncation_order", truncation_order()}});
        os << "  x = " << x.get_str() << ": |difference| = " << format_real(d, 5) << " (N = " << truncation_order() << ")\n";
    }
    json j = {{"index", a},
              {"expression", to_string(r.expression)},
              {"levels", levels_json(r.integration)},
              {"residual", symbol_json(r.integration.residual, A)},
              {"constant_fixing", fix_json(r.fix, o.precision)},
              {"verification", {{"symbol_equal", sym_ok}, {"numeric", checks}}}};
    emit(o, j,
         "H(" + index_to_string(a) + ";x) = " + to_string(r.expression) + "\nsymbol check: " +
             (sym_ok ? "equal" : "DIFFERENT") + "\nnumeric check at " + std::to_string(o.precision) +
             " digits:\n" + os.str());
    if (!sym_ok || !num_ok) throw VerificationFailed{"verify"};
    return 0;
}

int run_dissections(int nsides, const Options& o) {
    stage = "enumerate-dissections";
    if (nsides < 2 || nsides > 9) throw PreconditionViolated("polygon must have 2 to 9 sides");
    const auto& D = enumerate_maximal_dissections(nsides);
    json list = json::array();
    std::ostringstream os;
    os << D.size() << "\n";
    if (o.json)
        for (const auto& d : D) {
            json arrows = json::array();
            for (const auto& a : d.arrows) arrows.push_back({a.from_vertex, a.to_side});
            list.push_back({{"arrows", arrows}, {"sign", dissection_sign(d)}});
        }
    emit(o, {{"sides", nsides}, {"count", D.size()}, {"dissections", list}}, os.str());
    return 0;
}

int run_table2(const Options& o) {
    stage = "table2";
    auto rows = table2_enumerate(o.bound);
    json list = json::array();
    std::ostringstream os;
    for (const auto& r : rows) {
        std::string sign = r.s > 0 ? "+" : "-";
        list.push_back({{"s", sign},
                        {"alpha", r.alpha},
                        {"beta", r.beta},
                        {"gamma", r.gamma},
                        {"delta", r.delta},
                        {"R", r.value.to_string()},
                        {"constant", r.constant}});
        os << "(" << sign << ", " << r.alpha << ", " << r.beta << ", " << r.gamma << ", " << r.delta << ")  "
           << r.value.to_string() << (r.constant ? "  [constant]" : "") << "\n";
    }
    os << rows.size() << " solutions\n";
    emit(o, {{"bound", o.bound}, {"count", rows.size()}, {"rows", list}}, os.str());
    return 0;
}

CMZVSpec parse_cmzv(const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos) throw ParseError("expected 'm1,...,mk;s1,...,sk'");
    auto ints = [](const std::string& t) {
        std::vector<int> v;
        std::stringstream ss(t);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                size_t used = 0;
                v.push_back(std::stoi(tok, &used));
                if (tok.find_first_not_of(" \t", used) != std::string::npos) throw ParseError("bad integer '" + tok + "'");
            } catch (const std::logic_error&) {
                throw ParseError("bad integer '" + tok + "'");
            }
        }
        return v;
    };
    CMZVSpec z{ints(text.substr(0, semi)), ints(text.substr(semi + 1))};
    if (z.m.empty() || z.m.size() != z.s.size()) throw ParseError("index and sign lists differ in length");
    for (int m : z.m)
        if (m < 1) throw PreconditionViolated("indices must be positive");
    for (int v : z.s)
        if (v != 1 && v != -1) throw PreconditionViolated("signs must be +1 or -1");
    return z;
}

int run_cmzv(const std::string& text, const Options& o) {
    stage = "parse";
    CMZVSpec z = parse_cmzv(text);
    stage = "cmzv-symbol";
    ExprPtr g = cmzv_to_g(z);
    Alphabet A = expr_alphabet(g, make_ring({}));
    if (A.size() == 0) A.add(MPoly::constant(A.ring(), 2));
    Symbol S = cmzv_symbol(z, A);
    emit(o, {{"g", to_string(g)}, {"convergent", z.convergent()}, {"symbol", symbol_json(S, A)}},
         to_string(g) + "\n" + S.to_string(A) + "\n");
    return 0;
}

int run_eval(const std::string& expr, const Options& o) {
    Session s = open_session({expr}, o);
    stage = "eval";
    std::string var = single_variable(s);
    if (!var.empty() && o.points.empty()) throw PreconditionViolated("give --points for variable " + var);
    Precision P(o.precision);
    json vals = json::array();
    std::ostringstream os;
    for (const auto& x : var.empty() ? std::vector<Rational>{0} : parse_points(o.points)) {
        std::map<std::string, Rational> at;
        if (!var.empty()) at[var] = x;
        reset_truncation_order();
        Real v = eval_expr(s.exprs[0], at);
        std::string val = format_real(v, o.precision);
        json row = {{"value", val}, {"truncation_order", truncation_order()}};
        if (!var.empty()) row["point"] = x.get_str();
        vals.push_back(row);
        os << (var.empty() ? "" : var + " = " + x.get_str() + ": ") << val << "  (N = " << truncation_order() << ")\n";
    }
    emit(o, {{"expression", to_string(s.exprs[0])}, {"precision", o.precision}, {"values", vals}}, os.str());
    return 0;
}

int exit_code(const Error& e) {
    const std::string& k = e.kind();
    if (k == "Unsolvable" || k == "NotIntegrable" || k == "ReconstructionFailed") return 1;
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symbols and integration of multiple polylogarithms"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--alphabet", o.alphabet_file, "File of alphabet letters, one per line or comma separated");
    app.add_option("--precision", o.precision, "Working precision in decimal digits")->check(CLI::Range(30, 2000));
    app.add_option("--bound", o.bound, "Exponent bound for candidate arguments")->check(CLI::Range(1, 8));
    app.add_flag("--json", o.json, "JSON output");
    app.add_option("--points", o.points, "Comma separated rational sample points");

    std::string arg1, arg2 = "0";
    int nsides = 0;
    auto* c_symbol = app.add_subcommand("symbol", "Symbol of an expression");
    c_symbol->add_option("expression", arg1)->required();
    auto* c_int = app.add_subcommand("integrate", "Integrate a symbol, or the symbol of an expression");
    c_int->add_option("input", arg1)->required();
    auto* c_check = app.add_subcommand("check-identity", "Compare two expressions");
    c_check->add_option("lhs", arg1)->required();
    c_check->add_option("rhs", arg2, "Right-hand side (default 0)");
    c_check->add_flag("--numeric", o.numeric, "Also compare values at the sample points");
    auto* c_hpl = app.add_subcommand("hpl-reduce", "Reduce H(a;x) to the spanning set");
    c_hpl->add_option("index", arg1, "Comma separated entries in {-1,0,1}")->required();
    auto* c_diss = app.add_subcommand("enumerate-dissections", "Count maximal dissections of an n-gon");
    c_diss->add_option("sides", nsides)->required();
    auto* c_t2 = app.add_subcommand("table2", "Depth-one arguments over the HPL alphabet");
    auto* c_cmzv = app.add_subcommand("cmzv-symbol", "Symbol of a colored multiple zeta value");
    c_cmzv->add_option("spec", arg1, "'m1,...,mk;s1,...,sk'")->required();
    auto* c_eval = app.add_subcommand("eval", "Numerical value of an expression");
    c_eval->add_option("expression", arg1)->required();
    for (auto* c : app.get_subcommands({})) {
        c->fallthrough();
        c->positionals_at_end(false);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (c_symbol->parsed()) return run_symbol(arg1, o);
        if (c_int->parsed()) return run_integrate(arg1, o);
        if (c_check->parsed()) return run_check_identity(arg1, arg2, o);
        if (c_hpl->parsed()) return run_hpl_reduce(arg1, o);
        if (c_diss->parsed()) return run_dissections(nsides, o);
        if (c_t2->parsed()) return run_table2(o);
        if (c_cmzv->parsed()) return run_cmzv(arg1, o);
        if (c_eval->parsed()) return run_eval(arg1, o);
    } catch (const VerificationFailed& v) {
        std::cerr << "verification failed in " << v.stage << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error in " << stage << ": " << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error in " << stage << ": " << e.what() << "\n";
        return 2;
    }
    return 2;
}

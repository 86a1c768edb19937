#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "io.hpp"
#include "verify.hpp"

using namespace qp;
using io::json;

namespace {

struct Args {
    std::string pencil, variety, point, form, input, fromPencil, mode = "closed", pair, suite, signs;
    std::uint64_t seed = 1;
    double tol = 0.0;
    int n = 0;
    int trials = 0;
    bool random = false;
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

SL2Element parse_pair(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw io::SchemaError("--pair expects four real numbers a,b,c,d");
        }
    }
    if (v.size() != 4) throw io::SchemaError("--pair expects four real numbers a,b,c,d");
    return SL2Element(v[0], v[1], v[2], v[3]);
}

std::vector<bool> parse_signs(const std::string& s, int count, std::uint64_t seed) {
    if (s.empty()) {
        Rng rng(seed);
        return random_signs(rng, count);
    }
    if (static_cast<int>(s.size()) != count) throw io::SchemaError("--signs needs one '+' or '-' per coordinate");
    std::vector<bool> out;
    for (char c : s) {
        if (c != '+' && c != '-') throw io::SchemaError("--signs accepts only '+' and '-'");
        out.push_back(c == '-');
    }
    return out;
}

void require(const std::string& value, const char* flag) {
    if (value.empty()) throw io::SchemaError(std::string("missing ") + flag);
}

DiagonalIntersection load_variety(const Args& a) {
    require(a.variety, "--variety");
    return io::variety_from(io::load(a.variety));
}

// theta of x with respect to (a phi1 + b phi2, c phi1 + d phi2), by rescaling
// coordinates so that the new pair is diagonal again.
std::pair<DiagonalIntersection, SurfacePoint> transformed(const DiagonalIntersection& X, const SurfacePoint& x,
                                                          const SL2Element& g) {
    std::vector<Complex> lg;
    CVector y = x.x();
    for (int j = 0; j < X.ambient_dim(); ++j) {
        const Complex den = g.c() * X.lambdas[j] + g.d();
        if (std::abs(den) <= kTol) throw Error(ErrorKind::DegenerateForm, "transformed second form is degenerate");
        lg.push_back((g.a() * X.lambdas[j] + g.b()) / den);
        y(j) *= std::sqrt(den);
    }
    const auto Xg = make_variety(lg);
    return {Xg, make_point(Xg, y)};
}

json regularity_json(const RegularityReport& r) {
    return {{"phiGeneral", r.phiGeneral},
            {"sffNonsingular", r.sffNonsingular},
            {"sffGeneric", r.sffGeneric},
            {"restrictionsNondegenerate", r.restrictionsNondegenerate},
            {"regular", r.regular()},
            {"alphaRoots", io::to_json(r.alphaRoots)}};
}

int run(const std::string& cmd, const Args& a) {
    if (cmd == "discriminant") {
        require(a.pencil, "--pencil");
        const Pencil P = io::pencil_from(io::load(a.pencil));
        const auto rep = is_nonsingular(P, a.tol > 0 ? a.tol : kTol);
        emit({{"discriminant", io::to_json(discriminant(P))},
              {"roots", io::to_json(rep.roots)},
              {"rootsAtInfinity", rep.roots_at_infinity},
              {"nonsingular", rep.nonsingular}});
    } else if (cmd == "diagonalize") {
        require(a.pencil, "--pencil");
        const auto sb = standard_basis(io::pencil_from(io::load(a.pencil)), a.tol > 0 ? a.tol : kTol);
        emit({{"roots", io::to_json(sb.roots)}, {"basis", io::to_json(sb.basis)}, {"inverse", io::to_json(sb.inverse)}});
    } else if (cmd == "variety") {
        if (a.random) {
            if (a.n < 1) throw io::SchemaError("--random needs --n");
            Rng rng(a.seed);
            emit(io::to_json(random_variety(rng, a.n)));
        } else if (!a.fromPencil.empty()) {
            const auto sb = standard_basis(io::pencil_from(io::load(a.fromPencil)));
            if (sb.roots.size() < 4) throw Error(ErrorKind::DimensionMismatch, "ambient pencil needs n + 3 >= 4");
            emit({{"variety", io::to_json(make_variety(sb.roots))}, {"basis", io::to_json(sb.basis)}});
        } else {
            const auto X = load_variety(a);
            emit({{"variety", io::to_json(X)}, {"nonsingular", true}});
        }
    } else if (cmd == "fiber-point") {
        const auto X = load_variety(a);
        require(a.form, "--form");
        const auto p = point_from_fiber(X, io::form_from(io::load(a.form)), parse_signs(a.signs, X.ambient_dim(), a.seed));
        json out = io::to_json(p);
        out["residual"] = membership_residual(X, p.x());
        emit(out);
    } else if (cmd == "theta") {
        auto X = load_variety(a);
        require(a.point, "--point");
        auto x = io::point_from(io::load(a.point), X);
        if (!a.pair.empty()) std::tie(X, x) = transformed(X, x, parse_pair(a.pair));
        if (a.mode == "both") {
            const auto c = theta(X, x, ThetaMode::Closed), b = theta(X, x, ThetaMode::Brute);
            const double d = root_distance(c, b);
            emit({{"closed", io::to_json(c)}, {"brute", io::to_json(b)}, {"distance", d},
                  {"match", d <= (a.tol > 0 ? a.tol : 1e-7)}});
        } else {
            const auto f = theta(X, x, a.mode == "brute" ? ThetaMode::Brute : ThetaMode::Closed);
            emit({{"theta", io::to_json(f)}, {"roots", io::to_json(f.roots().finite)}});
        }
    } else if (cmd == "regular") {
        const auto X = load_variety(a);
        require(a.point, "--point");
        emit(regularity_json(is_regular(X, io::point_from(io::load(a.point), X))));
    } else if (cmd == "kernel") {
        const auto X = load_variety(a);
        require(a.point, "--point");
        const auto x = io::point_from(io::load(a.point), X);
        const auto K = kernel_subspace(X, x);
        emit({{"alphas", io::to_json(K.alphas)},
              {"v", io::to_json(K.v)},
              {"v0squared", io::to_json(CVector(K.v0().array().square()))},
              {"ambient", io::to_json(K.ambient())},
              {"mu", io::to_json(mu(X, x))}});
    } else if (cmd == "refined") {
        const auto X = load_variety(a);
        require(a.point, "--point");
        const auto x = io::point_from(io::load(a.point), X);
        if (!a.pair.empty()) {
            emit({{"image", io::to_json(fiber_point_image(X, x, parse_pair(a.pair)).coords())}});
        } else {
            emit(io::to_json(refined_mu(X, x)));
        }
    } else if (cmd == "rank-cert") {
        const auto X = load_variety(a);
        require(a.point, "--point");
        const auto x = io::point_from(io::load(a.point), X);
        const bool ok = injectivity_certificate(X, x);
        const auto T = tangent_image(X, x);
        emit({{"rankT4", T.rankT4}, {"rankT5", T.rankT5}, {"certified", ok}});
    } else if (cmd == "reconstruct") {
        require(a.input, "--input");
        const json in = io::load(a.input);
        if (!in.is_object() || !in.contains("samples") || !in["samples"].is_array())
            throw io::SchemaError("reconstruct expects {\"n\": int, \"samples\": [...]}");
        std::vector<RefinedSample> samples;
        for (const auto& s : in["samples"]) samples.push_back(io::sample_from(s));
        int n = a.n;
        if (in.contains("n")) {
            if (!in["n"].is_number_integer()) throw io::SchemaError("field 'n' must be an integer");
            n = in["n"].get<int>();
        }
        if (n < 1) throw io::SchemaError("missing n");
        const auto sol = solve_sigma(samples, n, a.tol > 0 ? a.tol : kTol);
        emit({{"sigma", io::to_json(sol.sigma.coeffs)},
              {"lambdas", io::to_json(recover_lambdas(sol.sigma))},
              {"residual", sol.residual},
              {"rank", sol.rank}});
    } else if (cmd == "verify") {
        require(a.suite, "--suite");
        verify::Options o;
        if (a.n > 0) o.ns = {a.n};
        o.trials = a.trials;
        o.seed = a.seed;
        o.tol = a.tol;
        verify::Result r;
        try {
            r = verify::run(a.suite, o);
        } catch (const std::invalid_argument& e) {
            throw io::SchemaError(e.what());
        }
        json out{{"suite", r.suite}, {"trials", r.trials}, {"passed", r.passed},
                 {"maxResidual", r.maxResidual}, {"tol", r.tol}, {"ok", r.ok}};
        for (const auto& [k, v] : r.metrics) out[k] = v;
        if (!r.note.empty()) out["note"] = r.note;
        emit(out);
        return r.ok ? 0 : 1;
    }
    return 0;
}

void error_envelope(const std::string& name, const std::string& message) {
    std::cerr << json{{"error", name}, {"message", message}}.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pencils of quadrics and second fundamental forms of intersections of two quadrics"};
    app.require_subcommand(1);
    Args a;

    auto add_common = [&](CLI::App* s) {
        s->add_option("--seed", a.seed, "Random seed");
        s->add_option("--tol", a.tol, "Tolerance override");
    };
    auto pencil_cmd = [&](const char* name, const char* help) {
        auto* s = app.add_subcommand(name, help);
        s->add_option("--pencil", a.pencil, "Pencil JSON (path, inline, or -)");
        add_common(s);
        return s;
    };
    auto point_cmd = [&](const char* name, const char* help) {
        auto* s = app.add_subcommand(name, help);
        s->add_option("--variety", a.variety, "Variety JSON");
        s->add_option("--point", a.point, "Point JSON");
        add_common(s);
        return s;
    };

    pencil_cmd("discriminant", "Discriminant binary form of a pencil");
    pencil_cmd("diagonalize", "Standard basis of a nonsingular pair");

    auto* var = app.add_subcommand("variety", "Validate, sample, or reduce a variety");
    var->add_option("--variety", a.variety, "Variety JSON");
    var->add_flag("--random", a.random, "Draw random lambdas");
    var->add_option("--n", a.n, "Dimension for --random");
    var->add_option("--from-pencil", a.fromPencil, "Reduce a nondiagonal ambient pencil");
    add_common(var);

    auto* fib = app.add_subcommand("fiber-point", "Point of X over a binary form");
    fib->add_option("--variety", a.variety, "Variety JSON");
    fib->add_option("--form", a.form, "Binary form JSON");
    fib->add_option("--signs", a.signs, "One '+' or '-' per coordinate; random from --seed if omitted");
    add_common(fib);

    auto* th = point_cmd("theta", "Discriminant of the second fundamental form");
    th->add_option("--mode", a.mode, "closed, brute, or both")->check(CLI::IsMember({"closed", "brute", "both"}));
    th->add_option("--pair", a.pair, "a,b,c,d: use (a phi1 + b phi2, c phi1 + d phi2)");

    point_cmd("regular", "Regularity conditions at a point");
    point_cmd("kernel", "Kernel of the moduli map at a point");
    auto* ref = point_cmd("refined", "Refined moduli sample at a point");
    ref->add_option("--pair", a.pair, "a,b,c,d: image of the fiber point over g(alpha)");
    point_cmd("rank-cert", "Injectivity certificate at a point");

    auto* rec = app.add_subcommand("reconstruct", "Recover lambdas from refined samples");
    rec->add_option("--input", a.input, "{\"n\": int, \"samples\": [...]}");
    rec->add_option("--n", a.n, "Dimension if the input omits it");
    add_common(rec);

    auto* ver = app.add_subcommand("verify", "Run a named property suite");
    ver->add_option("--suite", a.suite, "Suite name")->check(CLI::IsMember(verify::suite_names()));
    ver->add_option("--n", a.n, "Restrict to one dimension");
    ver->add_option("--trials", a.trials, "Number of trials");
    add_common(ver);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        error_envelope("SchemaError", e.what());
        return 2;
    }

    try {
        return run(app.get_subcommands().front()->get_name(), a);
    } catch (const io::SchemaError& e) {
        error_envelope("SchemaError", e.what());
        return 2;
    } catch (const Error& e) {
        error_envelope(std::string(e.name()), e.detail());
        return 3;
    }
}

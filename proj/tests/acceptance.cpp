// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <tvar/cli.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "poly_grading.hpp"
#include "support.hpp"
#include "worked.hpp"

using namespace tvar;
using namespace tvar::testing;
using namespace tvar::worked;

namespace {

// Collects the first few failures of a criterion.
class Check {
public:
    void expect(bool ok, const std::string& what) {
        ++count_;
        if (ok) return;
        if (failures_++ < 3) detail_ += (detail_.empty() ? "" : "; ") + what;
    }
    bool pass() const { return failures_ == 0; }
    std::string summary() const {
        if (pass()) return std::to_string(count_) + " checks";
        return std::to_string(failures_) + "/" + std::to_string(count_) + " failed: " + detail_;
    }

private:
    std::size_t count_ = 0;
    std::size_t failures_ = 0;
    std::string detail_;
};

std::string read_file(const std::string& name) {
    std::ifstream in(std::filesystem::path(TVAR_FIXTURE_DIR) / name);
    if (!in) raise("InputNotFound", "missing fixture " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

io::Problem fixture(const std::string& name) { return io::parse_problem_text(read_file(name)); }

const std::vector<HomogeneousElement>& elements(const io::Problem& p, const std::string& name) {
    return p.get<io::ElementsObject>(name, "elements").items;
}

Json run_cli(const std::string& file, cli::Options o) {
    o.input = file;
    cli::Outcome out = cli::run_text(read_file(file), o);
    if (out.exit_code != 0) raise("CliFailure", o.command + " on " + file + ": " + out.document.dump());
    return out.document["result"];
}

cli::Options command(const std::string& name) {
    cli::Options o;
    o.command = name;
    return o;
}

ZVec random_cone_point(const Cone& c, long maxcoef) {
    ZVec m(c.ambient_rank(), Int(0));
    for (const auto& h : hilbert_basis(c)) m = add(m, scale(h, Int(uniform(0, maxcoef))));
    return m;
}

// Section generator in a random degree times a random polynomial, hence a member.
HomogeneousElement random_member(const PolyhedralDivisor& d, long maxcoef) {
    ZVec m = random_cone_point(d.weight_cone(), maxcoef);
    RationalFunction g = sections(evaluate(d, m)).generator;
    return {g * fn(random_rational(1, 3, 3), {{lin(uniform(2, 4)), uniform(0, 2)}}), m};
}

HomogeneousElement random_product(const std::vector<HomogeneousElement>& gens, long maxlen) {
    HomogeneousElement x{fn(1), ZVec(gens[0].degree.size(), Int(0))};
    long len = uniform(1, maxlen);
    for (long i = 0; i < len; ++i) x = x * gens[static_cast<std::size_t>(uniform(0, static_cast<long>(gens.size()) - 1))];
    return x;
}

using Samples = std::vector<std::pair<HomogeneousElement, HomogeneousElement>>;

// 1. Normalization of the quadric generators over P1.
void quadric_normalization(Check& c) {
    io::Problem p = fixture("p1_quadric_hypersurface.json");
    Normalization n = divisor_from_generators(elements(p, "gens"), CurveKind::ProjectiveLine);
    c.expect(n.divisor == hypersurface_divisor(), "divisor differs from the hand-written one");
    c.expect(n.divisor == p.divisor("D"), "divisor differs from the fixture");
    c.expect(n.sigma == Cone::orthant(2), "sigma is not the orthant");
    c.expect(n.sigma.dual() == Cone::orthant(2), "dual of sigma is not the orthant");
    c.expect(n.warnings.empty(), "unexpected warnings");
    cli::Options o = command("normalize");
    o.elements = "gens";
    Json r = run_cli("p1_quadric_hypersurface.json", o);
    c.expect(r["divisor"] == io::divisor_json(hypersurface_divisor()), "cli divisor differs");
    c.expect(r["weight_cone"] == io::cone_json(Cone::orthant(2)), "cli weight cone differs");
}

// 2. Quadratic relation among the four generators.
void quadric_relation(Check& c) {
    auto g = elements(fixture("p1_quadric_hypersurface.json"), "gens");
    GradedElement t1 = g[0], t2 = g[1], t3 = g[2], t4 = g[3];
    c.expect((t4 * t4 - t1 * t1 * t2 * t2 * t3 - t1 * t3 * t3).is_zero(), "relation does not vanish");
    c.expect(!(t4 * t4 - t1 * t3 * t3).is_zero(), "truncated relation vanishes");
}

// 3. Suspension with d = 3, e = 2.
void suspension(Check& c) {
    io::Problem p = fixture("p1_suspension_d3_e2.json");
    Normalization n = divisor_from_generators(elements(p, "gens"), CurveKind::ProjectiveLine);
    c.expect(n.sigma == Cone::from_rays(2, {zvec({1, 0}), zvec({1, 6})}), "sigma is not Cone((1,0),(1,6))");
    c.expect(n.divisor == suspension_divisor(), "divisor differs from the hand-written one");
    c.expect(n.divisor == p.divisor("D"), "divisor differs from the fixture");
}

// 4. Rank two over the integers.
void integral_model(Check& c) {
    io::Problem p = fixture("specz_rank_two.json");
    Normalization n = divisor_from_generators(elements(p, "gens"), CurveKind::SpecZ);
    PolyhedralDivisor printed = p.divisor("D");
    c.expect(n.divisor == printed, "(a) normalization differs from the halfspace form");
    c.expect(n.divisor == integral_divisor(), "(a) normalization differs from the vertex form");

    Cone w = printed.weight_cone();
    long seen = 0;
    for (long a = 0; a <= 8; ++a)
        for (long b = 0; b <= 8; ++b) {
            ZVec m = zvec({a, b});
            if (!w.contains(m)) continue;
            ++seen;
            QDivisor e = evaluate(printed, m);
            Rational at3 = Rational(2 * a) - frac(b, 2);
            c.expect(e[BasePoint::prime(2)] == frac(-b, 2) && e[BasePoint::prime(3)] == at3,
                     "(b) closed formula fails at " + to_string(m));
        }
    c.expect(seen > 20, "(b) too few degrees in the box");

    std::map<ZVec, Rational> want{{zvec({1, 0}), frac(1, 9)}, {zvec({1, 1}), frac(2, 3)}, {zvec({1, 2}), frac(2, 3)}};
    std::map<ZVec, Rational> got;
    bool constant = true;
    for (const auto& g : bounded_generators(printed, Box{IVec{0, 0}, IVec{8, 8}}).generators) {
        constant = constant && g.function.is_constant();
        got[g.degree] = g.function.constant();
    }
    c.expect(constant && got == want, "(c) generators differ");
    cli::Options o = command("generators");
    o.box = "0:8";
    Json r = run_cli("specz_rank_two.json", o);
    c.expect(r["generators"] == io::elements_json({{fn(frac(1, 9)), zvec({1, 0})}, {fn(frac(2, 3)), zvec({1, 1})},
                                                   {fn(frac(2, 3)), zvec({1, 2})}}),
             "(c) cli generators differ");
}

// 5. Closure of (x^3, y^3) and the power oracle.
void two_cubes(Check& c) {
    io::Problem p = fixture("monomial_two_cubes.json");
    MonomialIdeal I = p.get<io::MonomialIdealObject>("I", "monomial_ideal").ideal;
    c.expect(monomial_closure_generators(I) == std::vector<ZVec>{zvec({0, 3}), zvec({1, 2}), zvec({2, 1}), zvec({3, 0})},
             "closure generators differ");
    SigmaPolyhedron newton = newton_polyhedron(I);
    for (long a = 0; a <= 6; ++a)
        for (long b = 0; b <= 6; ++b) {
            ZVec m = zvec({a, b});
            c.expect(closure_member_oracle(m, I, 12).member == newton.contains(m), "oracle disagrees at " + to_string(m));
        }
}

// 6. (x^2, y^3, z^7) is closed but not normal.
void corner(Check& c) {
    io::Problem p = fixture("monomial_corner_2_3_7.json");
    MonomialIdeal I = p.get<io::MonomialIdealObject>("I", "monomial_ideal").ideal;
    MonomialNormality r = monomial_is_normal(I);
    c.expect(!r.normal, "reported normal");
    c.expect(r.failing_power >= 1 && r.failing_power <= 2, "no failing power at most 2");
    if (!r.witness) {
        c.expect(false, "no witness");
        return;
    }
    IVec w = *r.witness;
    c.expect(w == IVec{1, 2, 6}, "witness is not (1,2,6)");
    // 21x + 14y + 6z >= 42e describes e * Newton polyhedron
    auto in = [](long x, long y, long z, long e) { return x >= 0 && y >= 0 && z >= 0 && 21 * x + 14 * y + 6 * z >= 42 * e; };
    c.expect(in(w[0], w[1], w[2], 2), "witness outside 2P");
    bool split = false;
    for (long a = 0; a <= w[0]; ++a)
        for (long b = 0; b <= w[1]; ++b)
            for (long z = 0; z <= w[2]; ++z)
                if (in(a, b, z, 1) && in(w[0] - a, w[1] - b, w[2] - z, 1)) split = true;
    c.expect(!split, "witness splits into two points of P");
    c.expect(p.description && p.description->find("(1, 2, 6)") != std::string::npos, "witness not recorded in the fixture");
}

// 7. Closed ideals of toric surfaces are normal; eP is normal in rank 3 for e >= 2.
void dilates_normal(Check& c) {
    for (int trial = 0; trial < 200; ++trial) {
        Cone w = random_pointed_cone(2, 3);
        MonomialIdeal I{w, {}};
        for (long i = 0, k = uniform(1, 3); i < k; ++i) I.exponents.push_back(random_cone_point(w, 2));
        c.expect(monomial_is_normal(I).normal, "rank-2 ideal not normal, trial " + std::to_string(trial));
    }
    for (int trial = 0; trial < 8; ++trial) {
        Cone tail = trial % 2 ? random_pointed_cone(3, 1) : Cone::orthant(3);
        std::vector<QVec> pts;
        for (int k = 0; k < 3; ++k) pts.push_back(to_q(random_zvec(3, 0, 2)));
        SigmaPolyhedron p = SigmaPolyhedron::from_vertices(3, pts, tail);
        for (long e = 2; e <= 3; ++e)
            c.expect(is_polyhedron_normal(dilate(p, e), 2), "dilate by " + std::to_string(e) + " not normal, trial " +
                                                               std::to_string(trial));
    }
}

// 8. Support values against the Hilbert-basis oracle.
void support_oracle(Check& c) {
    int done = 0;
    while (done < 500) {
        std::size_t n = static_cast<std::size_t>(uniform(1, 3));
        Cone tail = random_pointed_cone(n, 2);
        SigmaPolyhedron p = random_polyhedron(tail, static_cast<std::size_t>(uniform(1, 2)), 2, 2);
        // a Hilbert basis element of the dual, or the sum of two; the oracle cost grows fast with |m|
        ZMat hb = hilbert_basis(tail.dual());
        auto pick = [&] { return hb[static_cast<std::size_t>(uniform(0, static_cast<long>(hb.size()) - 1))]; };
        ZVec m = uniform(0, 1) ? pick() : add(pick(), pick());
        c.expect(support_value_hilbert_oracle(p.halfspaces(), m) == support_value(p, m), "mismatch at " + to_string(m));
        ++done;
    }
}

// 9. Vanishing pieces along the boundary ray.
void boundary_pieces(Check& c) {
    PolyhedralDivisor d = fixture("p1_boundary_zero_pieces.json").divisor("D");
    c.expect(d == boundary_divisor(), "fixture differs from the hand-written divisor");
    for (long r = 0; r <= 5; ++r)
        c.expect(graded_piece(d, zvec({2 * r + 1, 0})).module.is_zero(), "nonzero piece at r = " + std::to_string(r));
    c.expect(!graded_piece(d, zvec({2, 0})).module.is_zero(), "even degree unexpectedly zero");
}

// 10. Rees pair of (t2, t3, t4) on the quadric.
void rees(Check& c) {
    io::Problem p = fixture("p1_quadric_hypersurface.json");
    ReesPair rp = rees_pair(p.ideal("I"));
    Cone tail = Cone::from_rays(3, {zvec({1, 0, 0}), zvec({0, 1, -1}), zvec({0, 0, 1})});
    const PolyhedralDivisor& rd = rp.rees_divisor;
    c.expect(rd.coefficients().size() == 3, "support is not three points");
    c.expect(rd.coefficient(BasePoint::at(0)) == poly(tail, {qv({"-1/2", "0", "0"})}), "coefficient at 0 differs");
    c.expect(rd.coefficient(BasePoint::at(1)) == poly(tail, {qv({"1/2", "0", "0"})}), "coefficient at 1 differs");
    c.expect(rd.coefficient(BasePoint::infinity()) ==
                 poly(tail, {qv({"0", "1", "-1"}), qv({"1/2", "0", "0"}), qv({"0", "1/2", "0"})}),
             "coefficient at infinity differs");
    for (const auto& cond : pair_conditions(rp).conditions) c.expect(cond.pass, cond.name + ": " + cond.witness);
    Cone omega = rp.rees_weight_cone();
    for (long e = 0; e <= 4; ++e)
        for (long a = -2; a <= 8; ++a)
            for (long b = -2; b <= 8; ++b) {
                ZVec m = zvec({a, b});
                bool dil = e == 0 ? rp.ambient.weight_cone().contains(m) : dilate(rp.newton, e).contains(m);
                c.expect(omega.contains(zvec({a, b, e})) == dil, "slice differs at " + to_string(zvec({a, b, e})));
            }
}

// 11. Normality through the Rees pipeline against the power oracle.
void pipeline_vs_oracle(Check& c) {
    for (int trial = 0; trial < 20; ++trial) {
        ShiftedMonomialIdeal I = random_shifted_ideal(2, 3);
        c.expect(normal_by_pipeline(I, I.max_exponent() + 1) == normal_by_oracle(I, 12),
                 "disagreement on trial " + std::to_string(trial));
    }
}

// 12. Vertical actions.
void vertical(Check& c) {
    PolyhedralDivisor h = fixture("p1_quadric_hypersurface.json").divisor("D");
    c.expect(!vertical_exists(h, zvec({1, 0})), "exists for ray (1,0) on the quadric");
    c.expect(!vertical_exists(h, zvec({0, 1})), "exists for ray (0,1) on the quadric");

    std::size_t affine = 0;
    for (const auto& entry : std::filesystem::directory_iterator(TVAR_FIXTURE_DIR)) {
        if (entry.path().extension() != ".json") continue;
        io::Problem p = fixture(entry.path().filename().string());
        if (!is_affine(p.curve)) continue;
        for (const auto& name : p.names_of("divisor")) {
            PolyhedralDivisor d = p.divisor(name);
            ++affine;
            for (const auto& rho : d.tail().extreme_rays()) {
                std::string where = entry.path().filename().string() + " ray " + to_string(rho);
                c.expect(vertical_exists(d, rho), "no action for " + where);
                bool nonzero = false;
                for (const auto& root : roots_with_ray(d.tail(), rho, Box{IVec(d.rank(), -3), IVec(d.rank(), 3)}))
                    if (!vertical_phi(d, root).is_zero()) nonzero = true;
                c.expect(nonzero, "zero phi for " + where);
            }
        }
    }
    c.expect(affine >= 3, "too few affine fixtures");
    Json r = run_cli("a1_vertical_toric.json", command("vertical-exists"));
    for (const auto& ray : r["rays"]) c.expect(ray["exists"].get<bool>(), "cli reports no action");

    io::Problem p = fixture("a1_vertical_toric.json");
    const auto& va = p.get<io::VerticalActionObject>("vert", "vertical_action");
    PolyhedralDivisor d = p.divisor(va.divisor);
    auto root = is_demazure_root(d.tail(), va.root);
    if (!root) {
        c.expect(false, "fixture root is not a root");
        return;
    }
    RationalFunction phi = va.phi ? *va.phi : vertical_phi(d, *root).generator;
    for (int i = 0; i < 100; ++i) {
        HomogeneousElement x = random_member(d, 2);
        for (const auto& t : vertical_exponential(d, *root, phi, x).terms)
            c.expect(member(t.element, d), "term outside the algebra, sample " + std::to_string(i));
    }
}

// 13. Colored divisor, cones, assemblage and kernel.
void assemblage(Check& c) {
    io::Problem p = fixture("p1_horizontal_assemblage.json");
    ColoredDivisor cd = p.coloring("C");
    ColoringReport col = validate_coloring(cd);
    c.expect(col.all_pass(), "coloring rejected");
    c.expect(col.d == 2, "d is not 2");
    c.expect(col.v_deg == qv({"1/2", "0"}), "v_deg is not (1/2,0)");
    AssociatedCones ac = associated_cones(cd);
    c.expect(ac.omega == Cone::from_rays(2, {zvec({1, 1}), zvec({0, 1})}), "omega differs");
    c.expect(ac.omega_dual == Cone::from_rays(2, {zvec({-1, 1}), zvec({1, 0})}), "omega dual differs");

    CoherentAssemblage ca = p.assemblage("char3");
    c.expect(ca.p == 3 && ca.e == zvec({1, 2}) && ca.s == std::vector<long>{1} && ca.lambda == std::vector<Rational>{1},
             "fixture data differs");
    AssemblageReport rep = assemblage_check(ca);
    for (const auto& cond : rep.conditions) c.expect(cond.pass, cond.name + ": " + cond.witness);
    c.expect(rep.conditions.size() == 4, "expected four conditions");
    c.expect(rep.u.size() == 1 && rep.u[0] == -2, "u_1 is not -2");
    c.expect(rep.rho_tilde == zvec({1, 0, 2}), "rho tilde differs");
    // e~ = (p e, u); the opposite convention negates the first coordinate of rho~ and uses u = 1
    ZVec pe = scale(ca.e, Int(ca.p));
    ZVec et = pe;
    et.push_back(rep.u.empty() ? Int(0) : Int(rep.u[0].get_num()));
    c.expect(dot(et, rep.rho_tilde) == -1, "pairing with rho~ is not -1");
    ZVec flipped = pe;
    flipped.push_back(1);
    c.expect(dot(flipped, zvec({-1, 0, 2})) == -1, "opposite convention does not pair to -1");

    HorizontalKernel k = horizontal_kernel(ca);
    c.expect(k.lattice_basis == ZMat{zvec({2, 0}), zvec({0, 1})}, "kernel lattice differs");
    for (const auto& el : k.elements) c.expect(member(el, cd.divisor), "kernel element is not a member");

    cli::Options o = command("coloring-check");
    Json r = run_cli("p1_horizontal_assemblage.json", o);
    c.expect(r["cones"]["omega"] == io::cone_json(ac.omega), "cli omega differs");
    o = command("assemblage-check");
    o.object = "char3";
    r = run_cli("p1_horizontal_assemblage.json", o);
    c.expect(r["all_pass"].get<bool>(), "cli assemblage check fails");
}

// 14. Axioms of an iterative higher derivation, across the three families.
void axioms(Check& c) {
    std::size_t total = 0;
    auto run = [&](const std::string& label, const ExponentialMap& exp, const Samples& s) {
        AxiomReport rep = lfihd_axiom_check(exp, s);
        c.expect(rep.all_pass(), label + ": " + rep.witness);
        total += s.size();
    };

    io::Problem v = fixture("a1_vertical_toric.json");
    const auto& ta = v.get<io::ToricActionObject>("toric", "toric_action");
    auto troot = is_demazure_root(ta.cone, ta.root);
    if (!troot) {
        c.expect(false, "toric root invalid");
        return;
    }
    Cone tdual = ta.cone.dual();
    for (int batch = 0; batch < 7; ++batch) {
        Rational lambda = batch == 0 ? ta.lambda : random_rational(1, 3, 3);
        ExponentialMap exp = [&](const HomogeneousElement& el) { return toric_exponential(ta.cone, *troot, lambda, el); };
        Samples s;
        for (int i = 0; i < 10; ++i)
            s.push_back({{fn(random_rational(1, 2, 2)), random_cone_point(tdual, 2)}, {fn(1), random_cone_point(tdual, 2)}});
        run("toric", exp, s);
    }

    const auto& va = v.get<io::VerticalActionObject>("vert", "vertical_action");
    PolyhedralDivisor d = v.divisor(va.divisor);
    auto vroot = is_demazure_root(d.tail(), va.root);
    if (!vroot) {
        c.expect(false, "vertical root invalid");
        return;
    }
    RationalFunction phi0 = va.phi ? *va.phi : vertical_phi(d, *vroot).generator;
    for (int batch = 0; batch < 7; ++batch) {
        RationalFunction phi = phi0 * fn(random_rational(1, 2, 2), {{lin(3), uniform(0, 1)}});
        ExponentialMap exp = [&](const HomogeneousElement& el) { return vertical_exponential(d, *vroot, phi, el); };
        Samples s;
        for (int i = 0; i < 10; ++i) s.push_back({random_member(d, 2), random_member(d, 2)});
        run("vertical", exp, s);
    }

    io::Problem hp = fixture("p1_horizontal_assemblage.json");
    CoherentAssemblage ca = hp.assemblage("char0");
    const auto& gens = elements(hp, "gens");
    for (int batch = 0; batch < 6; ++batch) {
        Rational lambda = random_rational(1, 2, 3);
        ExponentialMap exp = [&](const HomogeneousElement& el) { return horizontal_exponential_char0(ca, lambda, el); };
        Samples s;
        for (int i = 0; i < 10; ++i) s.push_back({random_product(gens, 2), random_product(gens, 2)});
        run("horizontal", exp, s);
    }
    c.expect(total >= 200, "only " + std::to_string(total) + " samples");
}

// 15. Generators of a divisor normalize back to it.
void roundtrip(Check& c) {
    for (int trial = 0; trial < 50; ++trial) {
        CurveKind curve = trial % 2 ? CurveKind::SpecZ : CurveKind::AffineLine;
        PolyhedralDivisor d = random_affine_divisor(curve, 2);
        GeneratorReport rep = bounded_generators(d, default_generator_box(d));
        Normalization n = divisor_from_generators(rep.generators, curve);
        c.expect(n.sigma == d.tail() && n.divisor == d, "roundtrip differs, trial " + std::to_string(trial));
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, void (*)(Check&)>> criteria{
        {"quadric normalization over P1", quadric_normalization},
        {"quadric relation", quadric_relation},
        {"suspension d=3 e=2", suspension},
        {"rank two over Z", integral_model},
        {"closure of (x^3, y^3) and oracle", two_cubes},
        {"(x^2, y^3, z^7) not normal", corner},
        {"normality of dilates", dilates_normal},
        {"support value oracle", support_oracle},
        {"boundary pieces vanish", boundary_pieces},
        {"Rees pair of (t2, t3, t4)", rees},
        {"Rees pipeline vs power oracle", pipeline_vs_oracle},
        {"vertical actions", vertical},
        {"horizontal assemblage", assemblage},
        {"derivation axioms", axioms},
        {"generator roundtrip", roundtrip},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!c.pass()) ++failed;
        std::cout << (c.pass() ? "PASS " : "FAIL ") << i + 1 << ": " << criteria[i].first << " (" << c.summary() << ", "
                  << std::fixed << std::setprecision(2) << secs << "s)" << std::endl;
    }
    std::cout << criteria.size() - static_cast<std::size_t>(failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}

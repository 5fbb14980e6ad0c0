#include "hqg/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "hqg/compact_u1.hpp"
#include "hqg/qec.hpp"
#include "hqg/stabilizer.hpp"

namespace hqg::suites {

std::string status_name(Status s) {
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skip: return "skip";
    }
    return "?";
}

bool Report::passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.status == Status::fail; });
}

namespace {

CheckResult within(double dev, double tol, const std::string &detail = "") {
    CheckResult r;
    r.deviation = std::isfinite(dev) ? std::abs(dev) : 1e300;
    r.status = r.deviation <= tol ? Status::pass : Status::fail;
    r.detail = detail;
    return r;
}

CheckResult verdict(bool ok, double dev, const std::string &detail) {
    CheckResult r;
    r.deviation = std::isfinite(dev) ? std::abs(dev) : 1e300;
    r.status = ok ? Status::pass : Status::fail;
    r.detail = detail;
    return r;
}

CheckResult skipped(const std::string &why) {
    CheckResult r;
    r.status = Status::skip;
    r.detail = why;
    return r;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << x;
    return os.str();
}

std::string region_str(const std::set<int> &R) {
    std::string s = "{";
    for (int v : R) s += (s.size() > 1 ? "," : "") + std::to_string(v);
    return s + "}";
}

Mat pauli_x() {
    Mat X = Mat::Zero(2, 2);
    X(0, 1) = X(1, 0) = 1.0;
    return X;
}

Mat pauli_z() {
    Mat Z = Mat::Zero(2, 2);
    Z(0, 0) = 1.0;
    Z(1, 1) = -1.0;
    return Z;
}

std::vector<Mat> rep_from_spec(const FiniteGroup &G, const std::string &spec) {
    if (spec == "pauli-x") {
        if (G.order() != 2) throw ConfigError("pauli-x representation needs Z2");
        return {Mat::Identity(2, 2), pauli_x()};
    }
    if (spec == "regular") return regular_rep(G);
    if (spec == "trivial") return trivial_rep(G);
    auto irreps = representations(G).irreps;
    auto pick = [&](const std::string &s) -> const Irrep & {
        if (s == "last") return irreps.back();
        int k = -1;
        try {
            k = std::stoi(s);
        } catch (...) {
            throw ConfigError("bad irrep index '" + s + "'");
        }
        if (k < 0 || k >= static_cast<int>(irreps.size())) throw ConfigError("irrep index out of range: " + s);
        return irreps[k];
    };
    if (spec.rfind("irrep:", 0) == 0) return pick(spec.substr(6)).mats;
    if (spec.rfind("sum:", 0) == 0) {
        std::vector<Irrep> parts;
        std::stringstream ss(spec.substr(4));
        std::string tok;
        while (std::getline(ss, tok, ',')) parts.push_back(pick(tok));
        return direct_sum(parts, spec).mats;
    }
    throw ConfigError("unknown representation '" + spec + "'");
}

int rep_dim(const FiniteGroup &G, const std::string &spec) { return static_cast<int>(rep_from_spec(G, spec)[0].rows()); }

double kappa_deviation(const GaugeStructure &gs) {
    Mat Gm = gs.gauging_map(false);
    Mat K = Gm.adjoint() * Gm / gs.kappa2();
    return dev_norm(K - Mat::Identity(K.rows(), K.cols()));
}

double ngc_duality(const GaugeStructure &gs) {
    Mat Gm = gs.gauging_map(true);
    auto res = duality_check(
        Gm, gs.group().order(), [&](int g) { return gs.global_symmetry(g); },
        [&](int g) { return gs.asymptotic_symmetry(g); });
    return std::max(res.deviation, res.commutator);
}

// ------------------------------------------------------------------ gauging checks

CheckDef isometry_check(const GaugeInstance &inst) {
    return {"isometry/" + inst.name, "Thm 3.1", 1e-10, [inst](double tol, const RunOptions &) {
                auto gs = build_instance(inst);
                double dev = kappa_deviation(gs);
                Mat Gm = gs.gauging_map(false);
                auto [p, q] = recover_rational((Gm.adjoint() * Gm)(0, 0).real());
                long long want = 1;
                for (std::size_t i = 0; i < gs.graph().V1().size(); ++i) want *= gs.group().order();
                bool rational = p == 1 && q == want;
                auto r = within(dev, tol, "kappa^2 = " + std::to_string(p) + "/" + std::to_string(q));
                if (!rational) r.status = Status::fail;
                return r;
            }};
}

CheckDef flux_free_check(const GaugeInstance &inst) {
    return {"flux-free/" + inst.name, "Thm 3.5", 1e-10, [inst](double tol, const RunOptions &) {
                auto gs = build_instance(inst);
                if (!connectivity(gs.graph(), ConnectivityMode::bulk_only))
                    return skipped("hypothesis: bulk is not connected");
                Mat Gm = gs.gauging_map(false);
                Mat Pg = Gm * Gm.adjoint() / gs.kappa2();
                Mat Pff = gs.flux_free_projector();
                double dev = dev_norm(Pg - Pff);
                double tg = Pg.trace().real(), tf = Pff.trace().real();
                long long rg = std::llround(tg), rf = std::llround(tf);
                bool integral = std::abs(tg - rg) < 1e-9 && std::abs(tf - rf) < 1e-9 && rg == rf && rg == gs.vertex_dim();
                auto r = within(dev, tol, "rank " + std::to_string(rg) + " vs " + std::to_string(rf));
                if (!integral) r.status = Status::fail;
                return r;
            }};
}

CheckDef dressing_check(const GaugeInstance &inst) {
    return {"dressing/" + inst.name, "Thm 3.3, undressing theorem", 1e-10, [inst](double tol, const RunOptions &) {
                auto gs = build_instance(inst);
                Mat Gm = gs.gauging_map(true);
                double dev = 0.0;
                int paths = 0, ops = 0;
                for (int u : gs.graph().V1()) {
                    PathBounds b;
                    b.start = u;
                    b.max_count = 50;
                    for (const auto &p : enumerate_paths_and_cycles(gs.graph(), PathKind::vertex_to_boundary, b)) {
                        if (paths >= 50) break;
                        ++paths;
                        std::set<int> vg(p.vertices.begin(), p.vertices.end() - 1);
                        for (const Mat &Ou : generalized_pauli_basis(gs.system().dim(u))) {
                            auto Og = gs.dressed_operator(Ou, p);
                            Mat Ofull = Mat::Identity(gs.vertex_dim(), gs.vertex_dim());
                            apply_local(Ou, gs.vertex_fact(), {vertex_label(u)}, Ofull);
                            dev = std::max(dev, dev_norm(gs.apply_labeled(Og, Gm) - Gm * Ofull));
                            double leak = 0.0;
                            Mat back = gs.undress_operator(Og, vg, Gm, &leak);
                            dev = std::max({dev, leak, dev_norm(back - Ofull)});
                            ++ops;
                        }
                    }
                }
                if (paths == 0) return skipped("no vertex-to-boundary path");
                return within(dev, tol, std::to_string(paths) + " paths, " + std::to_string(ops) + " operators");
            }};
}

CheckDef duality_check_def(const GaugeInstance &inst) {
    return {"duality/" + inst.name, "Thm 3.4", 1e-10, [inst](double tol, const RunOptions &) {
                auto gs = build_instance(inst);
                if (gs.graph().V0().empty()) return skipped("no NGC vertices");
                return within(ngc_duality(gs), tol, std::to_string(gs.group().order()) + " group elements");
            }};
}

CheckDef wilson_check(const GaugeInstance &inst) {
    return {"wilson/" + inst.name, "Thm B.1", 1e-10, [inst](double tol, const RunOptions &) {
                auto gs = build_instance(inst);
                if (gs.loops().empty() && gs.lines().empty()) return skipped("no loops or NGC lines");
                std::vector<Vec> ops;
                for (const auto &r : gs.reps().irreps) {
                    for (const auto &l : gs.loops()) ops.push_back(gs.on_full(gs.wilson_loop(l, r)));
                    for (const auto &l : gs.lines())
                        for (int i = 0; i < r.dim; ++i)
                            for (int j = 0; j < r.dim; ++j) ops.push_back(gs.on_full(gs.wilson_line(l, r, i, j)));
                }
                const Mat &P = gs.pi_gi();
                double dev = 0.0;
                for (const auto &d : ops) dev = std::max(dev, diagonal_commutator(d, P));
                // edge-diagonal operators: pairwise commutators computed entrywise
                for (std::size_t a = 0; a < ops.size(); ++a)
                    for (std::size_t b = a + 1; b < ops.size(); ++b)
                        dev = std::max(dev, (ops[a].cwiseProduct(ops[b]) - ops[b].cwiseProduct(ops[a])).norm());
                return within(dev, tol, std::to_string(ops.size()) + " Wilson operators");
            }};
}

CheckDef sector_check(const GaugeInstance &inst) {
    return {"sectors/" + inst.name, "Def 2.11", 1e-10, [inst](double tol, const RunOptions &) {
                auto gs = build_instance(inst);
                auto sectors = gs.flux_sector_decomposition();
                Mat sum = Mat::Zero(gs.full_dim(), gs.full_dim());
                long long total = 0;
                for (const auto &s : sectors) {
                    sum += gs.sector_projector(s);
                    total += s.rank;
                }
                double tr = gs.pi_gi().trace().real();
                bool ranks = std::abs(tr - std::llround(tr)) < 1e-9 && total == std::llround(tr);
                auto r = within(dev_norm(sum - gs.pi_gi()), tol,
                                std::to_string(sectors.size()) + " sectors, rank " + std::to_string(total));
                if (!ranks) r.status = Status::fail;
                return r;
            }};
}

GaugeInstance s3_star() { return {"s3-star", "S3", [] { return star_graph(3, 1, 0); }, "irrep:2"}; }

CheckDef twisted_check() {
    return {"twisted/s3-star", "Thms B.4-B.5", 1e-10, [](double tol, const RunOptions &) {
                auto gs = build_instance(s3_star());
                const int n = gs.group().order();
                double dev = 0.0;
                int moved = 0;
                for (int a = 0; a < n; ++a) {
                    FluxAssignment phi{a, (a + 1) % n, (a + 3) % n};
                    Mat Gphi = gs.twisted_gauging_map(phi);
                    for (int h = 0; h < n; ++h) {
                        auto hphi = gs.conjugate_flux(phi, h);
                        if (hphi != phi) ++moved;
                        Mat lhs = Gphi * gs.global_symmetry(h);
                        Mat rhs = gs.asymptotic_symmetry(h) * gs.twisted_gauging_map(hphi);
                        dev = std::max(dev, dev_norm(lhs - rhs));
                    }
                }
                auto r = within(dev, tol, std::to_string(moved) + " pairs with conjugated flux != flux");
                if (moved == 0) r.status = Status::fail;
                return r;
            }};
}

CheckDef ngc_flux_check() {
    return {"ngc-flux/s3-star", "Thm B.6", 1e-10, [](double tol, const RunOptions &) {
                auto gs = build_instance(s3_star());
                auto sectors = gs.flux_sector_decomposition();
                double dev = 0.0;
                bool full = true;
                for (int h = 0; h < gs.group().order(); ++h) {
                    Mat F = gs.ngc_flux_map({{1, h}});
                    dev = std::max(dev, dev_norm(F.adjoint() * F - Mat::Identity(F.cols(), F.cols())));
                    bool found = false;
                    for (const auto &s : sectors) {
                        Mat P = gs.sector_projector(s);
                        if (dev_norm(P * F - F) < 1e-9) {
                            found = true;
                            if (s.rank != F.cols()) full = false;
                        }
                    }
                    full = full && found;
                }
                auto r = within(dev, tol, full ? "image fills its sector" : "image rank differs from sector rank");
                if (!full) r.status = Status::fail;
                return r;
            }};
}

// ------------------------------------------------------------------ QEC

Mat pauli_word(const std::string &w) {
    std::vector<Mat> parts;
    for (char c : w) parts.push_back(c == 'X' ? pauli_x() : (c == 'Z' ? pauli_z() : Mat(Mat::Identity(2, 2))));
    return kron_all(parts);
}

CodeIsometry five_qubit_dense() {
    Mat P = Mat::Identity(32, 32);
    for (const char *s : {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"}) P = P * (Mat::Identity(32, 32) + pauli_word(s)) / 2.0;
    Vec zero = P.col(0) / P.col(0).norm();
    Mat V(32, 2);
    V.col(0) = zero;
    V.col(1) = pauli_word("XXXXX") * zero;
    std::vector<Subsystem> phys;
    for (int q = 0; q < 5; ++q) phys.push_back({"q" + std::to_string(q), 2});
    return CodeIsometry(V, Factorization({{"L", 2}}), Factorization(phys));
}

std::vector<std::set<std::string>> qubit_regions(int k) {
    std::vector<std::set<std::string>> out;
    for (int mask = 0; mask < 32; ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        std::set<std::string> R;
        for (int q = 0; q < 5; ++q)
            if (mask >> q & 1) R.insert("q" + std::to_string(q));
        out.push_back(R);
    }
    return out;
}

Suite qec_suite() {
    Suite s{"qec", {}};
    s.checks.push_back({"correctable-2/five-qubit", "Def A.1, Lemma A.1", 1e-9, [](double tol, const RunOptions &) {
                            auto c = five_qubit_dense();
                            auto alg = full_logical_algebra(c);
                            double dev = 0.0;
                            int ok = 0;
                            for (const auto &R : qubit_regions(2)) {
                                auto r = is_correctable(c, R, alg, tol);
                                dev = std::max(dev, r.max_violation);
                                ok += r.correctable;
                            }
                            return verdict(ok == 10, dev, std::to_string(ok) + "/10 correctable");
                        }});
    s.checks.push_back({"uncorrectable-3/five-qubit", "Def A.1, Lemma A.1", 1e-9, [](double tol, const RunOptions &) {
                            auto c = five_qubit_dense();
                            auto alg = full_logical_algebra(c);
                            int bad = 0;
                            double least = 1e300;
                            for (const auto &R : qubit_regions(3)) {
                                auto r = is_correctable(c, R, alg, tol);
                                bad += !r.correctable;
                                least = std::min(least, r.max_violation);
                            }
                            return verdict(bad == 10, 0.0,
                                           std::to_string(bad) + "/10 not correctable, min violation " + fmt(least));
                        }});
    s.checks.push_back({"lifted-rep/five-qubit", "Lemmas A.2-A.3", 1e-9, [](double tol, const RunOptions &) {
                            auto c = five_qubit_dense();
                            auto Z2 = cyclic_group(2);
                            double dev = 0.0;
                            bool order2 = true;
                            for (const auto &R : qubit_regions(2)) {
                                auto W = lift_representation(c, R, {Mat::Identity(2, 2), pauli_x()}, Z2.mul);
                                dev = std::max(dev, lift_homomorphism_deviation(W, Z2.mul));
                                dev = std::max(dev, dev_norm(W[1].matrix * W[1].matrix -
                                                             Mat::Identity(W[1].matrix.rows(), W[1].matrix.rows())));
                                if (!is_unitary(W[1].matrix, tol) || unitary_order(W[1].matrix) != 2) order2 = false;
                                Mat M = c.matrix();
                                apply_local(W[1].matrix, c.physical(), W[1].fact.labels(), M);
                                dev = std::max(dev, dev_norm(M - c.matrix() * pauli_x()));
                            }
                            auto r = within(dev, tol, "10 three-qubit supports");
                            if (!order2) r.status = Status::fail;
                            return r;
                        }});
    s.checks.push_back({"choi-agreement/five-qubit", "Lemma A.1", 1e-9, [](double tol, const RunOptions &) {
                            auto c = five_qubit_dense();
                            auto alg = full_logical_algebra(c);
                            // tools/oracles/qec_oracle.py: correctable counts by size
                            const int expected[] = {1, 5, 10, 0, 0, 0};
                            int disagree = 0, regions = 0;
                            bool counts = true;
                            for (int k = 0; k <= 5; ++k) {
                                int n = 0;
                                for (const auto &R : qubit_regions(k)) {
                                    bool comm = is_correctable(c, R, alg, tol).correctable;
                                    bool info = std::abs(choi_mutual_information(c, R)) < tol;
                                    disagree += comm != info;
                                    n += comm;
                                    ++regions;
                                }
                                counts = counts && n == expected[k];
                            }
                            return verdict(disagree == 0 && counts, disagree,
                                           std::to_string(regions) + " regions, " + std::to_string(disagree) +
                                               " disagreements");
                        }});
    return s;
}

// ------------------------------------------------------------------ holographic

std::string join_regions(const std::vector<std::set<int>> &rs, std::size_t limit = 3) {
    std::string s;
    for (std::size_t i = 0; i < rs.size() && i < limit; ++i) s += (i ? " " : "") + region_str(rs[i]);
    if (rs.size() > limit) s += " ...";
    return s;
}

CheckDef dangling_check(const std::string &code) {
    return {"dangling/" + code, "Def 4.1", 0.0, [code](double, const RunOptions &) {
                auto c = code_from_name(code);
                auto rep = validate_dangling(c.graph);
                std::string d = std::to_string(c.graph.V0().size()) + " boundary sites";
                if (!rep.valid) d = rep.violations.front().description;
                return verdict(rep.valid, rep.violations.size(), d);
            }};
}

CheckDef probing_check(const std::string &code, int max_region) {
    return {"probing/" + code, "Def 4.2", 0.0, [code, max_region](double, const RunOptions &) {
                auto c = code_from_name(code);
                int bad = 0, n = 0;
                std::string first;
                for (const auto &R : contiguous_regions(c.graph, max_region)) {
                    for (const auto &w : {greedy_wedge(c.graph, R), complement_wedge(c.graph, R)}) {
                        auto p = near_boundary_probing(c.graph, w);
                        ++n;
                        if (!p.ok) {
                            ++bad;
                            if (first.empty()) first = region_str(R) + ": " + p.detail;
                        }
                    }
                }
                return verdict(bad == 0, bad, bad ? first : std::to_string(n) + " wedges");
            }};
}

CheckDef order_check(const std::string &code, int max_region, int permutations) {
    return {"order/" + code, "greedy order independence", 0.0,
            [code, max_region, permutations](double, const RunOptions &o) {
                auto c = code_from_name(code);
                int bad = 0, n = 0;
                for (const auto &R : contiguous_regions(c.graph, max_region)) {
                    ++n;
                    if (!greedy_order_independent(c.graph, R, permutations, o.seed + n)) ++bad;
                }
                return verdict(bad == 0, bad,
                               std::to_string(n) + " regions x " + std::to_string(permutations) + " orders");
            }};
}

CheckDef reconstruction_check(const std::string &code, int max_region) {
    return {"reconstruction/" + code, "Def 4.3", 0.0, [code, max_region](double, const RunOptions &) {
                auto c = code_from_name(code);
                int gens = 0, missing = 0;
                std::vector<std::set<int>> failing;
                for (const auto &R : contiguous_regions(c.graph, max_region)) {
                    auto rep = wedge_reconstruction(c, greedy_wedge(c.graph, R));
                    gens += rep.generators;
                    if (!rep.ok()) {
                        missing += rep.generators - rep.reconstructed;
                        failing.push_back(R);
                    }
                }
                return verdict(missing == 0, missing,
                               missing ? "not reconstructed on " + join_regions(failing)
                                       : std::to_string(gens) + " generators reconstructed");
            }};
}

// ------------------------------------------------------------------ Thm 4.2 / 5.1 / 5.2 pipeline

double phase_distance(const Mat &a, const Mat &b) {
    cplx ov = (a.adjoint() * b).trace();
    if (std::abs(ov) < 1e-12) return (a - b).norm();
    return (a * (ov / std::abs(ov)) - b).norm();
}

Suite pipeline_suite() {
    Suite s{"gauge-pipeline", {}};
    s.checks.push_back({"induced-dense/gauged-lote-z2-l0", "Thm 4.2", 1e-10, [](double tol, const RunOptions &) {
                            auto Z2 = cyclic_group(2);
                            auto b = block_dense_lote(build_lote(0, Z2, true));
                            auto sym = induce_boundary_symmetry_dense(b, Z2);
                            double dev = std::max(sym.duality_deviation, sym.homomorphism_deviation);
                            return within(dev, tol, std::to_string(sym.site.size()) + " sites, duality " +
                                                        fmt(sym.duality_deviation));
                        }});
    s.checks.push_back({"induced-symplectic/gauged-lote-z2-l1", "Thm 4.2", 0.0, [](double, const RunOptions &) {
                            auto Z2 = cyclic_group(2);
                            auto b = induce_boundary_symmetry(build_lote(1, Z2, true), Z2);
                            return verdict(b.representation_ok && b.duality_deviation == 0.0, b.duality_deviation,
                                           std::to_string(b.site.size()) + " sites, exact");
                        }});
    s.checks.push_back({"gauge-code/happy-l0", "Thm 5.1", 1e-10, [](double tol, const RunOptions &) {
                            auto r = gauge_code(build_happy(0), cyclic_group(2));
                            double dev = std::max(r.duality_deviation, r.reconstruction_residual);
                            return within(dev, tol, std::to_string(r.reconstructed) + " undressed reconstructions");
                        }});
    s.checks.push_back({"roundtrip/happy-l0", "Thm 5.2", 1e-10, [](double tol, const RunOptions &) {
                            auto Z2 = cyclic_group(2);
                            auto c = build_happy(0);
                            auto back = ungauge_code(gauge_code(c, Z2).code, Z2);
                            if (!back.code.dense) return verdict(false, 1.0, "no dense encoder after ungauging");
                            double dev = phase_distance(back.code.dense->matrix(), c.dense->matrix());
                            dev = std::max(dev, back.duality_deviation);
                            auto r = within(dev, tol, "dense encoder restored");
                            if (!back.code.encoder.same_state(c.encoder)) {
                                r.status = Status::fail;
                                r.detail = "symplectic encoder differs";
                            }
                            return r;
                        }});
    s.checks.push_back({"restricted-exits/gauged-happy-l0", "restricted symmetry, flux-free bulk", 0.1,
                        [](double tol, const RunOptions &) {
                            auto g = gauge_code(build_happy(0), cyclic_group(2)).code;
                            Mat P = *g.dense_map * g.dense_map->adjoint();
                            double d = image_overlap_deficiency(P, pauli_word("XXIII"));
                            return verdict(d > tol, d, "image-overlap deficiency " + fmt(d));
                        }});
    s.checks.push_back({"restricted-preserves/gauged-lote-z2-l0", "restricted symmetry, gauge-invariant bulk", 1e-10,
                        [](double tol, const RunOptions &) {
                            auto Z2 = cyclic_group(2);
                            auto code = build_lote(0, Z2, true);
                            auto b = block_dense_lote(code);
                            auto sym = induce_boundary_symmetry_dense(b, Z2);
                            auto V0 = code.graph.V0();
                            double d = restricted_image_deficiency(b, sym, {V0[0], V0[1]});
                            return within(d, tol, "image-overlap deficiency " + fmt(d));
                        }});
    return s;
}

// ------------------------------------------------------------------ entropy

Vec plus_product(int n) { return Vec::Constant(1LL << n, 1.0 / std::sqrt(double(1LL << n))); }

CheckDef gauged_entropy_check_def(int n) {
    const std::string id = "gauged-entropy/c" + std::to_string(n);
    return {id, "Eq. GaugedS", 1e-9, [n](double tol, const RunOptions &) {
                GaugeStructure gs(make_symmetric_system(cycle_graph(n), cyclic_group(2), {Mat::Identity(2, 2), pauli_x()}));
                std::vector<std::set<int>> regions;
                for (int mask = 0; mask < (1 << n); ++mask) {
                    int k = __builtin_popcount(mask);
                    if (k != 2 && k != 3) continue;
                    std::set<int> A;
                    for (int v = 0; v < n; ++v)
                        if (mask >> v & 1) A.insert(v);
                    regions.push_back(A);
                }
                auto recs = gauged_entropy_check(gs, plus_product(n), regions);
                double dev = 0.0;
                int bad = 0, bad_connected = 0;
                std::string worst;
                for (std::size_t i = 0; i < recs.size(); ++i) {
                    if (recs[i].skipped) continue;
                    dev = std::max(dev, recs[i].deviation());
                    if (recs[i].deviation() > tol) {
                        ++bad;
                        bad_connected += recs[i].connected;
                        if (worst.empty())
                            worst = region_str(regions[i]) + " lhs " + fmt(recs[i].lhs) + " rhs " + fmt(recs[i].rhs);
                    }
                }
                std::string d = std::to_string(recs.size()) + " regions";
                if (bad)
                    d += ", " + std::to_string(bad) + " off (" + std::to_string(bad_connected) +
                         " connected), e.g. " + worst;
                return within(dev, tol, d);
            }};
}

CheckDef rt_check_def() {
    return {"rt/happy-l0", "Eq. HoloCodeRT", 1e-9, [](double tol, const RunOptions &) {
                auto c = build_happy(0);
                Mat rho(2, 2);
                rho << 0.7, cplx(0.2, 0.1), cplx(0.2, -0.1), 0.3;
                auto recs = holographic_rt_check(c, rho, contiguous_regions(c.graph, 4));
                double dev = 0.0;
                int n = 0;
                for (const auto &r : recs)
                    if (!r.skipped) {
                        dev = std::max(dev, r.deviation());
                        ++n;
                    }
                return within(dev, tol, std::to_string(n) + " complementary-wedge regions");
            }};
}

// ------------------------------------------------------------------ U(1)

Suite u1_suite() {
    Suite s{"u1", {}};
    // tools/oracles/u1_oracle.py
    const std::map<std::string, int> thresholds = {{"u1-line2", 1}, {"u1-line3", 2}, {"u1-star", 3}};
    for (const auto &sys : u1_instances()) {
        const int th = thresholds.at(sys.name);
        s.checks.push_back({"u1/" + sys.name, "truncated U(1) gauging", 1e-10, [sys, th](double tol, const RunOptions &) {
                                auto st = p_sigma_stabilization(sys, th + 3);
                                double dev = 0.0;
                                bool blocks = true;
                                for (int N = th; N <= th + 2; ++N) {
                                    auto c = covariant_isometry(sys, N);
                                    dev = std::max({dev, c.isometry_deviation, c.covariance_deviation,
                                                    c.representation_deviation, c.commutator_deviation});
                                    blocks = blocks && c.block_covariant;
                                }
                                bool below = false;
                                try {
                                    covariant_isometry(sys, th - 1);
                                } catch (const NonPositiveP &) {
                                    below = true;
                                }
                                auto r = within(dev, tol, "P_Sigma stable from N = " + std::to_string(st.threshold));
                                if (!blocks || !st.monotone || st.threshold != th || !below) {
                                    r.status = Status::fail;
                                    r.detail += blocks ? "" : ", charge blocks unbalanced";
                                }
                                return r;
                            }});
    }
    s.checks.push_back({"u1/peter-weyl", "truncated Peter-Weyl isometry", 1e-12, [](double tol, const RunOptions &) {
                            double dev = 0.0;
                            for (int N = 0; N <= 6; ++N) dev = std::max(dev, peter_weyl_deviation(N));
                            return within(dev, tol, "N = 0..6");
                        }});
    s.checks.push_back({"u1/locality-lost", "truncation breaks dressing locality", 1e-3, [](double tol, const RunOptions &) {
                            auto sys = u1_open_line();
                            double least = 1e300;
                            for (int N = 1; N <= 3; ++N)
                                for (const auto &path : {std::vector<int>{1, 0}, std::vector<int>{1, 2}})
                                    least = std::min(least, truncated_dressing_residual(sys, N, 1, 0, 1, path));
                            return verdict(least > tol, least, "smallest single-path dressing residual " + fmt(least));
                        }});
    return s;
}

// ------------------------------------------------------------------ domain walls

Suite domain_wall_suite() {
    Suite s{"domain-walls", {}};
    s.checks.push_back({"dw-found/gauged-lote-z2-l0", "Eq. RemovableDW", 0.0, [](double, const RunOptions &) {
                            auto Z2 = cyclic_group(2);
                            auto c = build_lote(0, Z2, true);
                            auto sym = induce_boundary_symmetry(c, Z2).site;
                            for (int r = 0; r <= 2; ++r) {
                                auto res = domain_wall_search(c, r, sym);
                                if (res.found)
                                    return verdict(true, 0.0, "removable at radius " + std::to_string(r) + ", " +
                                                                  std::to_string(res.regions_tested) + " regions");
                            }
                            return verdict(false, 1.0, "no removal operator up to radius 2");
                        }});
    for (int l : {0, 1}) {
        const std::string code = "happy-l" + std::to_string(l);
        const int max_r = l == 0 ? 2 : 1;
        s.checks.push_back({"dw-absent/" + code, "Eq. RemovableDW (HaPPY non-example)", 0.0, [l, max_r](double, const RunOptions &) {
                                auto c = build_happy(l);
                                auto sym = boundary_x_symmetry(c);
                                for (int r = 0; r <= max_r; ++r) {
                                    auto res = domain_wall_search(c, r, sym, 2);
                                    if (res.found)
                                        return verdict(false, 1.0,
                                                       "removable at radius " + std::to_string(r) + " on all " +
                                                           std::to_string(res.regions_tested) + " bulk regions");
                                }
                                return verdict(true, 0.0, "Absent up to radius " + std::to_string(max_r));
                            }});
    }
    return s;
}

// ------------------------------------------------------------------ backend consistency

double state_distance(Vec a, Vec b) {
    a /= a.norm();
    b /= b.norm();
    cplx ov = a.dot(b);
    if (std::abs(ov) < 1e-12) return (a - b).norm();
    return (a * (ov / std::abs(ov)) - b).norm();
}

// Reorder qubit amplitudes from label order `from` to `to`.
Vec permute_qubits(const Vec &v, const std::vector<std::string> &from, const std::vector<std::string> &to) {
    const int n = static_cast<int>(from.size());
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) {
        auto it = std::find(from.begin(), from.end(), to[i]);
        if (it == from.end()) throw LabelMismatch("missing qubit " + to[i]);
        pos[i] = static_cast<int>(it - from.begin());
    }
    Vec out(v.size());
    for (long long b = 0; b < v.size(); ++b) {
        long long t = 0;
        for (int i = 0; i < n; ++i) t = (t << 1) | ((b >> (n - 1 - pos[i])) & 1);
        out(t) = v(b);
    }
    return out;
}

Vec choi_of(const Mat &V) {
    Vec c = Vec::Zero(V.rows() * V.cols());
    for (long long i = 0; i < V.cols(); ++i)
        for (long long o = 0; o < V.rows(); ++o) c(o * V.cols() + i) = V(o, i);
    return c;
}

std::vector<std::string> output_labels(const StabilizerState &s) {
    std::vector<std::string> out;
    for (int q : s.outputs()) out.push_back(s.legs()[q].label);
    return out;
}

std::vector<std::string> input_labels(const StabilizerState &s) {
    std::vector<std::string> out;
    for (int q : s.inputs()) out.push_back(s.legs()[q].label);
    return out;
}

std::vector<std::string> qubit_labels(const Factorization &f) {
    std::vector<std::string> out;
    for (const auto &s : f.subsystems())
        if (s.dim == 2) out.push_back(s.label);
        else if (s.dim != 1) throw UnsupportedSpec("factor " + s.label + " is not a qubit");
    return out;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string> &b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// Symplectic map vs dense matrix with the given row/column labels, compared as Choi states.
double map_distance(const StabilizerState &s, const Mat &dense, const std::vector<std::string> &rows,
                    const std::vector<std::string> &cols) {
    Vec a = choi_of(s.dense_isometry());
    Vec b = permute_qubits(choi_of(dense), concat(rows, cols), concat(output_labels(s), input_labels(s)));
    return state_distance(a, b);
}

Suite backend_suite() {
    Suite s{"backend", {}};
    s.checks.push_back({"backend/perfect-tensor", "five-qubit encoder", 1e-10, [](double tol, const RunOptions &) {
                            auto pt = perfect_tensor();
                            Mat Vs = pt.dense_isometry();
                            auto c = five_qubit_dense();
                            double dev = dev_norm(Vs * Vs.adjoint() - c.projector());
                            dev = std::max(dev, dev_norm(Vs.adjoint() * Vs - Mat::Identity(2, 2)));
                            return within(dev, tol, "code projectors agree");
                        }});
    s.checks.push_back({"backend/contraction", "leg contraction", 1e-10, [](double tol, const RunOptions &) {
                            auto a = perfect_tensor("a"), b = perfect_tensor("b");
                            auto both = tensor_product(a, b);
                            Vec dense = both.dense_state();
                            auto c = both;
                            c.contract("a1", "b1");
                            // dense Bell projection of legs a1 and b1
                            const int n = both.size();
                            const int i = both.leg_index("a1"), j = both.leg_index("b1");
                            Vec out = Vec::Zero(1LL << (n - 2));
                            for (long long x = 0; x < dense.size(); ++x) {
                                if (((x >> (n - 1 - i)) & 1) != ((x >> (n - 1 - j)) & 1)) continue;
                                long long r = 0;
                                for (int q = 0; q < n; ++q)
                                    if (q != i && q != j) r = (r << 1) | ((x >> (n - 1 - q)) & 1);
                                out(r) += dense(x);
                            }
                            return within(state_distance(c.dense_state(), out), tol, "12 -> 10 qubits");
                        }});
    s.checks.push_back({"backend/gauging-map", "Def 3.1", 1e-10, [](double tol, const RunOptions &) {
                            double dev = 0.0;
                            int n = 0;
                            for (const auto &g : {cycle_graph(3), line_graph({0, 1, 1}), triangle_pendant_graph(),
                                                  star_graph(3, 1, 0)}) {
                                GaugeStructure gs(
                                    make_symmetric_system(g, cyclic_group(2), {Mat::Identity(2, 2), pauli_x()}));
                                auto st = gauging_map_state(g, "p:");
                                std::vector<std::string> cols;
                                for (const auto &l : qubit_labels(gs.vertex_fact())) cols.push_back("p:" + l);
                                dev = std::max(dev, map_distance(st, gs.gauging_map(true), qubit_labels(gs.full_fact()), cols));
                                ++n;
                            }
                            return within(dev, tol, std::to_string(n) + " graphs");
                        }});
    s.checks.push_back({"backend/gauge-code", "Thm 5.1", 1e-10, [](double tol, const RunOptions &) {
                            auto r = gauge_code(build_happy(0), cyclic_group(2));
                            const auto &c = r.code;
                            double dev = map_distance(c.encoder, *c.dense_map, qubit_labels(c.dense_boundary),
                                                      qubit_labels(c.dense_bulk));
                            return within(dev, tol, "11-qubit Choi states");
                        }});
    s.checks.push_back({"backend/reconstruction", "cleaning", 1e-10, [](double tol, const RunOptions &) {
                            auto pt = perfect_tensor();
                            Mat V = pt.dense_isometry();
                            Factorization phys({{"1", 2}, {"2", 2}, {"3", 2}, {"4", 2}, {"5", 2}});
                            CodeIsometry code(V, Factorization({{"0", 2}}), phys);
                            double dev = 0.0;
                            int agree = 0, total = 0;
                            for (int mask = 1; mask < 32; ++mask) {
                                std::set<int> region;
                                std::set<std::string> erased;
                                for (int q = 0; q < 5; ++q) {
                                    if (mask >> q & 1) region.insert(q + 1);
                                    else erased.insert(std::to_string(q + 1));
                                }
                                for (char L : {'X', 'Z'}) {
                                    Pauli lp(1);
                                    (L == 'X' ? lp.x : lp.z)[0] = 1;
                                    auto sp = pauli_reconstruct(pt, lp, region);
                                    double res = 0.0;
                                    bool dense_ok = true;
                                    try {
                                        reconstruct_on_complement(code, erased, lp.dense(), &res);
                                        dense_ok = res < 1e-9;
                                    } catch (const Error &) {
                                        dense_ok = false;
                                    }
                                    if (sp) {
                                        std::vector<int> outs = pt.outputs();
                                        Pauli phys_p(5);
                                        for (int k = 0; k < 5; ++k) {
                                            phys_p.x[k] = sp->x[outs[k]];
                                            phys_p.z[k] = sp->z[outs[k]];
                                        }
                                        phys_p.phase = sp->phase;
                                        // stabilizer element P_out (x) L^T on the Choi state: P V = V L
                                        dev = std::max(dev, phase_distance(phys_p.dense() * V, V * lp.dense()));
                                    }
                                    agree += sp.has_value() == dense_ok;
                                    ++total;
                                }
                            }
                            auto r = within(dev, tol, std::to_string(agree) + "/" + std::to_string(total) + " verdicts agree");
                            if (agree != total) r.status = Status::fail;
                            return r;
                        }});
    s.checks.push_back({"backend/entropy", "Choi-state entropy", 1e-10, [](double tol, const RunOptions &) {
                            auto pt = perfect_tensor();
                            Vec v = pt.dense_state();
                            std::vector<Subsystem> subs;
                            for (int q = 0; q < 6; ++q) subs.push_back({std::to_string(q), 2});
                            StateVector sv{v, Factorization(subs)};
                            double dev = 0.0;
                            for (int mask = 1; mask < 63; ++mask) {
                                std::vector<int> legs;
                                std::set<std::string> keep;
                                for (int q = 0; q < 6; ++q)
                                    if (mask >> q & 1) {
                                        legs.push_back(q);
                                        keep.insert(std::to_string(q));
                                    }
                                double d = entropy(partial_trace(sv, keep));
                                dev = std::max(dev, std::abs(d - pt.entropy_bits(legs) * std::log(2.0)));
                            }
                            return within(dev, tol, "62 bipartitions");
                        }});
    return s;
}

Suite make_suite(const std::string &name, std::vector<CheckDef> checks) { return Suite{name, std::move(checks)}; }

}  // namespace

// ------------------------------------------------------------------ instances

LabeledGraph graph_from_spec(const std::string &kind, const std::vector<int> &alphas, int size) {
    if (kind == "line") {
        if (alphas.empty()) throw ConfigError("line graph needs alphas");
        return line_graph(alphas);
    }
    if (kind == "cycle") {
        if (size < 3) throw ConfigError("cycle graph needs size >= 3");
        return cycle_graph(size, alphas.empty() ? 1 : alphas[0]);
    }
    if (kind == "star") {
        if (size < 1) throw ConfigError("star graph needs size >= 1");
        return star_graph(size, alphas.size() > 0 ? alphas[0] : 1, alphas.size() > 1 ? alphas[1] : 0);
    }
    if (kind == "triangle") {
        if (alphas.size() != 3) throw ConfigError("triangle graph needs three alphas");
        return triangle_graph(alphas);
    }
    if (kind == "triangle-pendant") return triangle_pendant_graph();
    throw ConfigError("unknown graph kind '" + kind + "'");
}

long long estimated_dimension(const GaugeInstance &inst) {
    auto G = make_group(inst.group);
    auto g = inst.graph();
    const long long n = G.order();
    // representation dimension without building irreps for the regular case
    long long d = inst.rep == "regular" ? n : (inst.rep == "pauli-x" ? 2 : -1);
    long double total = 1.0L;
    for (std::size_t e = 0; e < g.edges().size(); ++e) total *= n;
    if (total > dense_cap())
        throw CapExceeded("instance " + inst.name + " needs at least |G|^|E| = " +
                          std::to_string(static_cast<long long>(std::min(total, 1e18L))) + " > cap " +
                          std::to_string(dense_cap()));
    if (d < 0) d = rep_dim(G, inst.rep);
    for (int v : g.V1()) {
        (void)v;
        total *= d;
    }
    if (total > dense_cap())
        throw CapExceeded("instance " + inst.name + " needs dimension " +
                          std::to_string(static_cast<long long>(std::min(total, 1e18L))) + " > cap " +
                          std::to_string(dense_cap()));
    return static_cast<long long>(total);
}

GaugeStructure build_instance(const GaugeInstance &inst) {
    estimated_dimension(inst);
    auto G = make_group(inst.group);
    return GaugeStructure(make_symmetric_system(inst.graph(), G, rep_from_spec(G, inst.rep)));
}

std::vector<GaugeInstance> gauge_catalog() {
    return {
        {"z2-line", "Z2", [] { return line_graph({0, 1, 1}); }, "pauli-x"},
        {"z2-star", "Z2", [] { return star_graph(3, 1, 0); }, "pauli-x"},
        {"z2-pendant", "Z2", [] { return triangle_pendant_graph(); }, "pauli-x"},
        {"z3-line", "Z3", [] { return line_graph({0, 1, 1}); }, "regular"},
        {"z3-triangle", "Z3", [] { return triangle_graph({1, 1, 0}); }, "regular"},
        {"z2xz2-triangle", "Z2xZ2", [] { return triangle_graph({1, 1, 0}); }, "sum:1,2"},
        s3_star(),
        {"s3-pendant", "S3", [] { return triangle_pendant_graph(); }, "irrep:1"},
        {"d4-star", "D4", [] { return star_graph(3, 1, 0); }, "irrep:last"},
        {"d4-line", "D4", [] { return line_graph({0, 1, 1}); }, "irrep:last"},
    };
}

Suite gauging_core_suite(const std::vector<GaugeInstance> &instances) {
    Suite s{"gauging-core", {}};
    for (const auto &i : instances) {
        s.checks.push_back(isometry_check(i));
        s.checks.push_back(flux_free_check(i));
        s.checks.push_back(dressing_check(i));
        s.checks.push_back(duality_check_def(i));
    }
    return s;
}

Suite wilson_suite(const std::vector<GaugeInstance> &instances) {
    Suite s{"wilson", {}};
    for (const auto &i : instances) {
        s.checks.push_back(wilson_check(i));
        s.checks.push_back(sector_check(i));
    }
    return s;
}

Suite holo_structure_suite(const std::vector<std::string> &codes, int max_region, int permutations) {
    Suite s{"holo-structure", {}};
    for (const auto &c : codes) {
        code_from_name(c);
        s.checks.push_back(dangling_check(c));
        s.checks.push_back(probing_check(c, max_region));
        s.checks.push_back(order_check(c, max_region, permutations));
        s.checks.push_back(reconstruction_check(c, max_region));
    }
    return s;
}

HolographicCode code_from_name(const std::string &name) {
    auto cutoff = [&](const std::string &prefix) {
        std::string rest = name.substr(prefix.size());
        if (rest.empty() || !std::all_of(rest.begin(), rest.end(), ::isdigit)) throw ConfigError("bad code name " + name);
        return std::stoi(rest);
    };
    if (name.rfind("happy-l", 0) == 0) return build_happy(cutoff("happy-l"));
    if (name.rfind("gauged-lote-z2-l", 0) == 0) return build_lote(cutoff("gauged-lote-z2-l"), cyclic_group(2), true);
    if (name.rfind("lote-z2-l", 0) == 0) return build_lote(cutoff("lote-z2-l"), cyclic_group(2), false);
    if (name.rfind("gauged-happy-l", 0) == 0)
        return gauge_code(build_happy(cutoff("gauged-happy-l")), cyclic_group(2)).code;
    throw ConfigError("unknown code '" + name + "'");
}

Scenario gauge_scenario(const std::string &id, const GaugeInstance &inst, const std::vector<std::string> &suites) {
    estimated_dimension(inst);
    Scenario s{id, "custom " + inst.group + " instance", 0, 0.0, {}};
    for (const auto &name : suites) {
        if (name == "gauging-core") s.suites.push_back(gauging_core_suite({inst}));
        else if (name == "wilson") s.suites.push_back(wilson_suite({inst}));
        else throw ConfigError("suite '" + name + "' does not apply to a gauge instance");
    }
    return s;
}

Scenario code_scenario(const std::string &id, const std::string &code, const std::vector<std::string> &suites) {
    Scenario s{id, "custom code " + code, 0, 0.0, {}};
    for (const auto &name : suites) {
        if (name == "holo-structure") s.suites.push_back(holo_structure_suite({code}));
        else throw ConfigError("suite '" + name + "' does not apply to a code");
    }
    return s;
}

const std::vector<Scenario> &catalog() {
    static const std::vector<Scenario> cat = [] {
        auto inst = gauge_catalog();
        std::vector<Scenario> c;
        std::vector<CheckDef> iso, ff, dr, du;
        for (const auto &i : inst) {
            iso.push_back(isometry_check(i));
            ff.push_back(flux_free_check(i));
            dr.push_back(dressing_check(i));
            du.push_back(duality_check_def(i));
        }
        ff.push_back(flux_free_check({"z2-split-bulk", "Z2", [] { return line_graph({1, 0, 1}); }, "pauli-x"}));
        du.push_back(twisted_check());
        du.push_back(ngc_flux_check());
        c.push_back({"gauging-isometry", "gauging map isometry on the group/graph catalog", 1, 10,
                     {make_suite("gauging-isometry", iso)}});
        c.push_back({"flux-free-image", "image of the gauging map is the flux-free sector", 2, 30,
                     {make_suite("flux-free", ff)}});
        c.push_back({"dressing", "dressed and undressed vertex operators", 3, 60, {make_suite("dressing", dr)}});
        c.push_back({"dualities", "gauge/global, twisted and NGC-flux dualities", 4, 30, {make_suite("dualities", du)}});
        c.push_back({"wilson-algebra", "Wilson operators and flux sectors", 5, 20, {wilson_suite(inst)}});
        c.push_back({"five-qubit-qec", "erasure correction lemmas on the five-qubit code", 6, 60, {qec_suite()}});
        c.push_back({"holographic-structure", "wedges, probing and reconstruction", 7, 300,
                     {holo_structure_suite({"happy-l0", "happy-l1", "happy-l2", "gauged-lote-z2-l0", "gauged-lote-z2-l1"})}});
        c.push_back({"gauge-pipeline", "induced boundary symmetry, code gauging and ungauging", 8, 120, {pipeline_suite()}});
        c.push_back({"entropy-c4", "gauged entropy on rings and the single-tile RT formula", 9, 60,
                     {make_suite("entropy", {gauged_entropy_check_def(4), gauged_entropy_check_def(6), rt_check_def()})}});
        c.push_back({"u1-truncation", "truncated U(1) gauging", 10, 30, {u1_suite()}});
        c.push_back({"domain-walls", "locally removable domain walls", 11, 60, {domain_wall_suite()}});
        c.push_back({"backend-consistency", "dense and symplectic backends agree", 12, 60, {backend_suite()}});
        c.push_back(gauge_scenario("z2-line", inst[0], {"gauging-core"}));
        c.back().description = "Z2 on the two-vertex line with an NGC end";
        c.push_back(code_scenario("happy-l0", "happy-l0", {"holo-structure"}));
        c.back().description = "single-tile HaPPY code";
        auto lote = code_scenario("gauged-lote-z2-l1", "gauged-lote-z2-l1", {"holo-structure"});
        lote.suites.push_back(make_suite("induced-symmetry", {pipeline_suite().checks[1]}));
        lote.description = "gauged LOTE code, one layer";
        c.push_back(lote);
        return c;
    }();
    return cat;
}

const Scenario *find_scenario(const std::string &id) {
    for (const auto &s : catalog())
        if (s.id == id) return &s;
    return nullptr;
}

std::vector<std::string> suite_names() {
    std::set<std::string> names;
    for (const auto &s : catalog())
        for (const auto &su : s.suites) names.insert(su.name);
    return {names.begin(), names.end()};
}

Report run_scenario(const Scenario &s, const std::vector<std::string> &selected, const RunOptions &opts) {
    for (const auto &name : selected) {
        bool known = std::any_of(s.suites.begin(), s.suites.end(), [&](const Suite &su) { return su.name == name; });
        if (!known) throw ConfigError("scenario " + s.id + " has no suite '" + name + "'");
    }
    std::vector<std::pair<const CheckDef *, std::string>> todo;
    for (const auto &su : s.suites) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), su.name) == selected.end()) continue;
        for (const auto &c : su.checks) todo.push_back({&c, su.name});
    }
    Report rep;
    rep.scenario = s.id;
    rep.checks.resize(todo.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr cap;
    std::mutex mu;
    auto worker = [&] {
        for (std::size_t i = next++; i < todo.size(); i = next++) {
            const CheckDef &c = *todo[i].first;
            auto t0 = std::chrono::steady_clock::now();
            CheckResult r;
            try {
                r = c.run(opts.tolerance.value_or(c.tolerance), opts);
            } catch (const CapExceeded &) {
                std::lock_guard<std::mutex> lock(mu);
                if (!cap) cap = std::current_exception();
                r = verdict(false, 1.0, "dense cap exceeded");
            } catch (const std::exception &e) {
                r = verdict(false, 1.0, std::string("error: ") + e.what());
            }
            r.id = c.id;
            r.anchor = c.anchor;
            r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            rep.checks[i] = r;
        }
    };
    auto t0 = std::chrono::steady_clock::now();
    const int n = std::max(1, std::min<int>(opts.threads, static_cast<int>(todo.size())));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto &t : pool) t.join();
    }
    rep.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (cap) std::rethrow_exception(cap);
    return rep;
}

}  // namespace hqg::suites

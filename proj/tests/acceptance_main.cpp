// Acceptance harness: one pass/fail line per criterion, nonzero exit on
// any failure.  Every tolerance and budget is pinned here, not read from
// the environment, so a run is reproducible by invocation alone.

#include <chrono>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "spb/charclass.hpp"
#include "spb/exppoly.hpp"
#include "spb/galerkin.hpp"
#include "spb/lattice.hpp"
#include "spb/spectra.hpp"

using namespace spb;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Random symbolic section used by the operator-identity sweeps; same
// construction as the unit suites.
ExpPolySection random_section(std::mt19937& rng, const Rat& B) {
    std::uniform_int_distribution<int> nterms(2, 5), small(-3, 3), den(1, 3),
        deg(0, 3), coin(0, 1);
    ExpPolySection s;
    s.B = B;
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        ExpPolyTerm t;
        t.coeff = RingElem(
            GaussRat(Rat(small(rng), den(rng)), Rat(small(rng), den(rng))));
        if (t.coeff.is_zero()) t.coeff = RingElem(Rat(1));
        t.p = deg(rng);
        t.r = deg(rng);
        t.a = RingElem(Rat(small(rng), den(rng)));
        t.b = RingElem(Rat(small(rng), den(rng)));
        t.gauss = coin(rng) ? B / 2 : Rat(0);
        t.kappa = Rat(small(rng), 2);
        s.terms.push_back(std::move(t));
    }
    return canonical(std::move(s));
}

// ---- criterion 1: dimension counts agree across independent methods ----
bool dimension_three_way(std::string& note) {
    const auto t0 = Clock::now();
    for (int n = 1; n <= 5; ++n)
        for (int B = 1; B <= 10; ++B)
            for (int q = 0; q <= 8; ++q) {
                auto rep = make_dimension_report(n, B, q);
                if (rep.exact_hrr != rep.closed_form) {
                    note = "count mismatch at n=" + std::to_string(n) +
                           " B=" + std::to_string(B) + " q=" +
                           std::to_string(q);
                    return false;
                }
                if (!(rep.closed_form_imag_residual < 1e-6)) {
                    note = "imaginary residual " +
                           std::to_string(rep.closed_form_imag_residual);
                    return false;
                }
                if (n == 2 &&
                    (!rep.n2_formula ||
                     *rep.n2_formula != p2_closed_form(B, q))) {
                    note = "surface formula mismatch at B=" +
                           std::to_string(B) + " q=" + std::to_string(q);
                    return false;
                }
            }
    const double dt = seconds_since(t0);
    note = "450 parameter triples in " + std::to_string(dt) + "s";
    if (dt >= 10.0) {
        note += " (budget 10s exceeded)";
        return false;
    }
    return true;
}

// ---- criterion 2: untwisted counts are binomial coefficients ----
bool untwisted_binomials(std::string& note) {
    for (int n = 1; n <= 6; ++n)
        for (int k = 1; k <= 20; ++k)
            if (hrr_dimension(n, k, 0) != binomial(Int(k + n), n)) {
                note = "mismatch at n=" + std::to_string(n) + " k=" +
                       std::to_string(k);
                return false;
            }
    note = "120 pairs, all exact";
    return true;
}

// ---- criterion 3: polynomial identity behind the counts is exact ----
bool polynomial_identity(std::string& note) {
    for (int n = 1; n <= 8; ++n)
        if (!binom_poly_identity_check(n)) {
            note = "failed at degree " + std::to_string(n);
            return false;
        }
    note = "degrees 1..8, coefficient-exact";
    return true;
}

// ---- criterion 4: ladder and operator identities are exact ----
bool ladder_identities(std::string& note) {
    const Rat B(2);
    for (int delta = 1; delta <= 4; ++delta) {
        for (int j = 0; j < delta; ++j) {
            auto theta = theta_basis({B, delta, j});
            if (!apply_operator(OperatorKind::dzbar, theta.section)
                     .is_zero() ||
                !eigen_residual(theta.section, Rat(0)).is_zero()) {
                note = "ground section residual at delta=" +
                       std::to_string(delta) + " j=" + std::to_string(j);
                return false;
            }
            if (j != 0) continue;
            for (int q = 1; q <= 5; ++q) {
                auto up = ladder_up(theta.section, q);
                if (!eigen_residual(up, Rat(q) * B).is_zero()) {
                    note = "raised section is not an eigensection at q=" +
                           std::to_string(q);
                    return false;
                }
                const Rat c = ladder_constant(Space::AbelianVariety, 1, B, q);
                if (!(ladder_down(up, q) - scale(RingElem(c), theta.section))
                         .is_zero()) {
                    note = "round trip constant wrong at q=" +
                           std::to_string(q);
                    return false;
                }
                for (int k = 1; k <= q; ++k)
                    if (!eigen_residual(ladder_down(up, k), Rat(q - k) * B)
                             .is_zero()) {
                        note = "partial descent off-level at q=" +
                               std::to_string(q) + " k=" + std::to_string(k);
                        return false;
                    }
            }
        }
    }
    std::mt19937 rng(20260814u);
    const std::vector<Rat> curvatures{Rat(1), Rat(2), Rat(7, 3)};
    for (int i = 0; i < 100; ++i) {
        const Rat& Bi = curvatures[static_cast<std::size_t>(i) % 3];
        ExpPolySection s = random_section(rng, Bi);
        if (!bk_residual(s).is_zero()) {
            note = "commutation residual nonzero on section " +
                   std::to_string(i);
            return false;
        }
        ExpPolySection gap = apply_operator(OperatorKind::delta_up0, s) -
                             apply_operator(OperatorKind::delta0, s) -
                             scale(RingElem(Bi), s);
        if (!gap.is_zero()) {
            note = "operator difference is not curvature times identity "
                   "on section " +
                   std::to_string(i);
            return false;
        }
    }
    note = "flux 1..4, levels 1..5, 100 random sections, all exact";
    return true;
}

// ---- criterion 5: lattice levels reproduce the flat-torus spectrum ----
bool lattice_levels(std::string& note) {
    const double B = 6.283185;
    std::ostringstream times;
    for (int delta = 1; delta <= 3; ++delta) {
        const auto t0 = Clock::now();
        TorusLatticeConfig cfg{64, B, delta};
        auto rep = landau_report(cfg, 4);
        if (!rep.counts_ok) {
            note = "cluster counts differ from the flux at delta=" +
                   std::to_string(delta);
            return false;
        }
        if (!(std::abs(rep.clusters[0].center) < 0.02 * B)) {
            note = "ground cluster center " +
                   std::to_string(rep.clusters[0].center) + " at delta=" +
                   std::to_string(delta);
            return false;
        }
        for (int q = 1; q <= 3; ++q)
            if (!(rep.residuals[static_cast<std::size_t>(q)] <= 0.05)) {
                note = "level " + std::to_string(q) + " off by " +
                       std::to_string(
                           rep.residuals[static_cast<std::size_t>(q)]) +
                       " at delta=" + std::to_string(delta);
                return false;
            }
        if (!gauge_invariance_check(cfg, 20260814u)) {
            note = "gauge conjugation moved the spectrum at delta=" +
                   std::to_string(delta);
            return false;
        }
        const double dt = seconds_since(t0);
        times << (delta > 1 ? ", " : "") << dt << "s";
        if (dt >= 60.0) {
            note = "config delta=" + std::to_string(delta) +
                   " exceeded the 60s budget";
            return false;
        }
    }
    note = "N=64, flux 1..3, per-config " + times.str();
    return true;
}

// ---- criterion 6: rational Galerkin reproduces the line spectrum ----
bool galerkin_line(std::string& note) {
    for (int B = 1; B <= 4; ++B) {
        const int m = 4, d = B + 8;
        auto rep = p1_spectrum_report(B, m, d, 3);
        if (!rep.counts_ok || !(rep.max_residual <= 1e-8)) {
            note = "level table off at B=" + std::to_string(B) +
                   " (max residual " + std::to_string(rep.max_residual) +
                   ")";
            return false;
        }
        for (int q = 0; q <= 3; ++q) {
            const auto& row = rep.table.rows[static_cast<std::size_t>(q)];
            if (row.eigenvalue != Rat(q) * Rat(B + q + 1)) {
                note = "predicted level wrong at B=" + std::to_string(B) +
                       " q=" + std::to_string(q);
                return false;
            }
            if (!row.multiplicity ||
                *row.multiplicity != Int(B + 2 * q + 1) ||
                rep.measured_counts[static_cast<std::size_t>(q)] !=
                    Int(B + 2 * q + 1)) {
                note = "multiplicity wrong at B=" + std::to_string(B) +
                       " q=" + std::to_string(q);
                return false;
            }
        }
        if (!kodaira_difference_check(B, m, d)) {
            note = "assembled operator difference is not curvature times "
                   "the Gram matrix at B=" +
                   std::to_string(B);
            return false;
        }
    }
    note = "B=1..4, m=4, d=B+8, levels 0..3, counts and difference exact";
    return true;
}

// ---- criterion 7: curvature vanishing patterns and null-cone size ----
bool curvature_structure(std::string& note) {
    for (int mu = 1; mu <= 4; ++mu)
        for (int nu = 1; nu <= 4; ++nu) {
            auto rep = grassmann_structure_check(mu, nu);
            if (!rep.pass() || rep.nullity != (mu - 1) * (nu - 1)) {
                note = "structure scan failed at mu=" + std::to_string(mu) +
                       " nu=" + std::to_string(nu);
                return false;
            }
        }
    auto levels = grassmann_eigenvalues(2, 2, -1);
    if (levels.first != 0 || levels.second != 5) {
        note = "bottom levels at mu=nu=2, B=-1 are not (0, 5)";
        return false;
    }
    note = "mu, nu <= 4 exhaustive; bottom levels (0, 5) confirmed";
    return true;
}

// ---- criterion 8: raised theta sections are orthogonal across levels ----
bool cross_level_orthogonality(std::string& note) {
    const ThetaSpec spec{Rat(1), 2, 0, 8};
    auto theta = theta_basis(spec);
    std::vector<ExpPolySection> levels;
    for (int q = 0; q <= 3; ++q)
        levels.push_back(q == 0 ? theta.section
                                : ladder_up(theta.section, q));
    std::vector<double> norms;
    for (const auto& s : levels) {
        const auto g = l2_inner(s, s, spec, 256);
        if (!(g.real() > 0)) {
            note = "non-positive norm";
            return false;
        }
        norms.push_back(std::sqrt(g.real()));
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < levels.size(); ++a)
        for (std::size_t b = a + 1; b < levels.size(); ++b) {
            const auto ip = l2_inner(levels[a], levels[b], spec, 256);
            worst = std::max(worst, std::abs(ip) / (norms[a] * norms[b]));
        }
    std::ostringstream msg;
    msg << "levels 0..3, 256x256 grid, worst normalized overlap " << worst;
    note = msg.str();
    return worst < 1e-6;
}

// ---- criterion 9: CLI output is byte-identical across repeated runs ----
std::string capture(const std::string& args, int& exit_code) {
    static int counter = 0;
    const std::string path = "acc_capture_" + std::to_string(counter++);
    const std::string cmd =
        std::string(SPB_CLI_PATH) + " " + args + " > " + path + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream f(path, std::ios::binary);
    std::ostringstream buf;
    buf << f.rdbuf();
    std::remove(path.c_str());
    return buf.str();
}

bool deterministic_cli(std::string& note) {
    const std::string cmds[] = {
        "hrr -n 2 -B 3 -q 1 --all-methods --seed 7",
        "spectrum abelian -n 2 -B 3/2 --delta 1 2 --qmax 3 --seed 7",
        "verify identities --seeds 30 --seed 7",
        "verify torus --N 16 -B 1.25 --delta 1 --levels 2 --seed 9",
    };
    for (const auto& cmd : cmds) {
        int code_a = -1, code_b = -1;
        const std::string a = capture(cmd, code_a);
        const std::string b = capture(cmd, code_b);
        if (code_a != 0 || code_b != 0) {
            note = "nonzero exit for: " + cmd;
            return false;
        }
        if (a.empty() || a != b) {
            note = "outputs differ for: " + cmd;
            return false;
        }
    }
    note = "4 commands, two runs each, byte-identical";
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        bool (*run)(std::string&);
    };
    const Criterion criteria[] = {
        {"dimension counts agree across three independent methods",
         dimension_three_way},
        {"untwisted counts equal binomial coefficients", untwisted_binomials},
        {"count-generating polynomial identity is coefficient-exact",
         polynomial_identity},
        {"raising/lowering and commutation identities are exact",
         ladder_identities},
        {"lattice levels reproduce the flat-torus spectrum", lattice_levels},
        {"rational Galerkin reproduces the projective-line spectrum",
         galerkin_line},
        {"curvature vanishing patterns and null-cone dimension",
         curvature_structure},
        {"raised theta sections are orthogonal across levels",
         cross_level_orthogonality},
        {"CLI output is byte-identical across repeated runs",
         deterministic_cli},
    };

    int failures = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        std::string note;
        bool ok = false;
        try {
            ok = c.run(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::printf("[%d/9] %s  %s%s%s\n", index, ok ? "PASS" : "FAIL",
                    c.name, note.empty() ? "" : " -- ", note.c_str());
        std::fflush(stdout);
    }
    if (failures) {
        std::printf("acceptance: %d of 9 criteria failed\n", failures);
        return 1;
    }
    std::printf("acceptance: 9/9 criteria passed\n");
    return 0;
}

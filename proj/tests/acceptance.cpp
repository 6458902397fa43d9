// Acceptance run: one PASS/FAIL line per criterion. All comparisons are exact
// (tolerance 0); runtimes are printed next to their budgets.

#include "orbiconf/orbiconf.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>

using namespace orbiconf;

namespace {

GlobalQuotientOrbifold fixture(const std::string& name, std::optional<size_t> subdiv = std::nullopt) {
    return parse_orbifold(read_json_file(std::string(ORBICONF_FIXTURES) + "/" + name + ".json"), subdiv);
}

std::vector<size_t> betti(const GlobalQuotientOrbifold& x, size_t n, int top) {
    return conf_homology(x, n, Coefficients::rational, {}, top).betti;
}

std::string show(const std::vector<size_t>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

// Betti numbers of C_n for the disk, k <= 1, n = 1..4.
std::vector<std::vector<size_t>> disk_table(size_t r) {
    auto x = fixture("disk", r);
    std::vector<std::vector<size_t>> out;
    for (size_t n = 1; n <= 4; ++n) out.push_back(betti(x, n, 1));
    return out;
}

std::vector<std::vector<size_t>> cone_table(size_t r) {
    auto x = fixture("cone", r);
    std::vector<std::vector<size_t>> out;
    for (size_t n = 1; n <= 3; ++n) out.push_back(betti(x, n, 1));
    return out;
}

std::vector<std::vector<size_t>> duality_table(size_t s2_level, size_t football_level) {
    std::vector<std::vector<size_t>> out;
    for (size_t n = 1; n <= 2; ++n) out.push_back(duality_check(fixture("s2", s2_level), n).homology);
    out.push_back(duality_check(fixture("football", football_level), 1).homology);
    return out;
}

struct Result {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_s, const std::function<Result()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
        r = body();
    } catch (const std::exception& e) {
        r = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = budget_s <= 0 || secs <= budget_s;
    bool ok = r.pass && in_time;
    if (!ok) ++failures;
    std::cout << (ok ? "PASS" : "FAIL") << " " << id << " " << name << ": " << r.detail << " [" << std::fixed
              << std::setprecision(1) << secs << "s";
    if (budget_s > 0) std::cout << " / " << budget_s << "s";
    std::cout << "]" << std::endl;
}

} // namespace

int main() {
    std::vector<std::vector<size_t>> disk1, cone1, dual1;

    criterion(1, "torsion H_1(UConf_2(S^2); Z) = Z/2", 300, [] {
        auto h = conf_homology(fixture("s2", 1), 2, Coefficients::integral);
        bool ok = h.betti.size() > 1 && h.betti[1] == 0 && h.torsion[1] == std::vector<Integer>{Integer(2)};
        std::string t;
        for (const auto& z : h.torsion[1]) t += "Z/" + z.to_string() + " ";
        return Result{ok, "H_1 torsion " + (t.empty() ? std::string("none") : t) + "betti " + show(h.betti)};
    });

    criterion(2, "disk stability n=1..3", 600, [&] {
        auto x = fixture("disk");
        auto rep = verify_stability(x, 3);
        disk1 = disk_table(x.subdiv_level());
        bool ok = rep.pass() && disk1[0][0] == 1 && disk1[1] == std::vector<size_t>{1, 1} && disk1[2] == std::vector<size_t>{1, 1};
        return Result{ok, "C_1..C_4 in degrees <= 1: " + show(disk1[0]) + show(disk1[1]) + show(disk1[2]) + show(disk1[3]) +
                              ", s_n ranks " + (rep.pass() ? "full" : "deficient")};
    });

    criterion(3, "cone [D^2/Z_3] stability", 900, [&] {
        cone1 = cone_table(fixture("cone").subdiv_level());
        bool ok = cone1[0][0] == cone1[1][0] && cone1[1][0] == cone1[2][0] && cone1[1][1] == cone1[2][1];
        return Result{ok, "C_1..C_3 in degrees <= 1: " + show(cone1[0]) + show(cone1[1]) + show(cone1[2])};
    });

    criterion(4, "transfer p_* p^! = C(n,m) id, all fixtures, n <= 3", 0, [] {
        size_t checked = 0;
        std::string bad;
        for (const char* name : {"disk", "cone", "s2", "football", "antipodal", "rp2"}) {
            auto x = fixture(name);
            MapEngine e(x, 3 * x.dimension());
            for (size_t n = 2; n <= 3; ++n)
                for (const auto& v : verify_transfer_identity(e, n)) {
                    ++checked;
                    if (!v.pass) bad += std::string(" ") + name + ":n" + std::to_string(n) + "m" + std::to_string(v.m);
                }
        }
        return Result{bad.empty(), std::to_string(checked) + " identities" + (bad.empty() ? "" : ", failing" + bad)};
    });

    criterion(5, "Dold relations on the disk, n = 2, 3", 0, [] {
        auto x = fixture("disk");
        MapEngine e(x, 3 * x.dimension());
        size_t checked = 0, failed = 0;
        for (size_t n = 2; n <= 3; ++n)
            for (const auto& v : verify_dold(e, n)) {
                ++checked;
                failed += !v.pass;
            }
        return Result{checked > 0 && failed == 0, std::to_string(checked) + " identities, " + std::to_string(failed) + " failing"};
    });

    criterion(6, "twisted duality: S^2 n=1,2 and football n=1", 0, [&] {
        std::string detail;
        bool ok = true;
        auto s2 = fixture("s2");
        auto fb = fixture("football");
        for (auto [x, n, label] : {std::tuple{&s2, size_t(1), "S2 n=1"}, std::tuple{&s2, size_t(2), "S2 n=2"},
                                   std::tuple{&fb, size_t(1), "football n=1"}}) {
            auto rep = duality_check(*x, n);
            ok = ok && rep.pass;
            dual1.push_back(rep.homology);
            detail += std::string(label) + " H " + show(rep.homology) + " H^c " + show(rep.cohomology_c) + "; ";
        }
        return Result{ok, detail};
    });

    criterion(7, "omega_n factors over blocks, |G wr S_n| <= 1e4", 0, [] {
        size_t cases = 0;
        bool ok = true;
        std::string skipped;
        for (const char* name : {"disk", "cone", "s2", "football", "antipodal", "rp2"}) {
            auto x = fixture(name);
            WreathCharacter omega;
            try {
                omega = x.orientation_character();
            } catch (const InputError&) {
                // No orientation character on a non-orientable manifold.
                skipped += std::string(" ") + name;
                continue;
            }
            for (size_t n = 1;; ++n) {
                double order = 1;
                for (size_t i = 1; i <= n; ++i) order *= double(x.group().order()) * double(i);
                if (order > 1e4) break;
                ok = ok && is_multiplicative(omega, WreathProduct(x.group(), n));
                for (size_t m = 0; m <= n; ++m) {
                    ++cases;
                    ok = ok && block_factorization_holds(omega, x.group(), n, m);
                }
            }
        }
        return Result{ok, std::to_string(cases) + " (fixture, n, m) cases" + (skipped.empty() ? "" : ", not orientable:" + skipped)};
    });

    criterion(8, "chi_c additivity on the football, n = 1, 2", 0, [] {
        auto x = fixture("football");
        std::string detail;
        bool ok = true;
        for (size_t n = 1; n <= 2; ++n) {
            auto r = chi_c_report(x, n);
            ok = ok && r.additive();
            detail += "n=" + std::to_string(n) + " total " + std::to_string(r.total) + " strata";
            for (long s : r.strata) detail += " " + std::to_string(s);
            detail += "; ";
        }
        return Result{ok, detail};
    });

    criterion(9, "comma skeleta discrete of size C(n,m), b* invariance", 120, [] {
        Perm swap(6);
        for (uint32_t i = 0; i < 6; ++i) swap[i] = i ^ 1u;
        size_t cases = 0, checks = 0;
        bool ok = true;
        for (const auto& g : {FiniteGroup::trivial(6), FiniteGroup::generated_by(6, {swap})})
            for (size_t n = 1; n <= 5; ++n)
                for (size_t m = 0; m < n; ++m) {
                    auto rep = verify_comma(g, n, m);
                    ++cases;
                    checks += rep.invariance_checked;
                    ok = ok && rep.skeleta_ok && rep.invariance_ok;
                }
        return Result{ok, std::to_string(cases) + " (G, n, m) cases, " + std::to_string(checks) + " invariance checks"};
    });

    criterion(10, "Betti numbers unchanged at subdivision level r+1", 0, [&] {
        if (disk1.empty() || cone1.empty() || dual1.size() != 3) return Result{false, "criteria 2, 3 or 6 did not run"};
        auto disk2 = disk_table(fixture("disk").subdiv_level() + 1);
        auto cone2 = cone_table(fixture("cone").subdiv_level() + 1);
        auto dual2 = duality_table(fixture("s2").subdiv_level() + 1, fixture("football").subdiv_level() + 1);
        std::string detail;
        bool ok = true;
        auto cmp = [&](const char* label, const auto& a, const auto& b) {
            bool same = a == b;
            ok = ok && same;
            detail += std::string(label) + (same ? " same; " : " CHANGED; ");
        };
        cmp("disk", disk1, disk2);
        cmp("cone", cone1, cone2);
        cmp("duality", dual1, dual2);
        return Result{ok, detail};
    });

    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria failing") << std::endl;
    return failures == 0 ? 0 : 1;
}

// Walks the degree-6 worked example: a pseudo-periodic class made of two
// genus-1 periodic pieces glued along one separating annulus, the unique
// degree-2 root that sits above it, and the primitivity verdicts on the way.
#include <cstdio>

#include "ppds/io.hpp"
#include "ppds/pseudo_periodic.hpp"
#include "ppds/roots.hpp"

using namespace ppds;

int main() {
    PseudoPeriodicDataSet base;
    base.n = 6;
    base.orbits = {
        {CyclicDataSet{2, 0, 0, {{1, 2}, {1, 2}, {1, 2}, {1, 2}}}, 1},
        {CyclicDataSet{3, 0, 0, {{2, 3}, {2, 3}, {2, 3}}}, 1},
    };
    base.annuli = {{1, 1, 1, 0, 1, AnnulusClass::DP}};

    auto rep = validate_pp(base);
    std::printf("base    %s", to_text(base).c_str());
    std::printf("        valid=%s genus=%lld q=%lld\n", rep.valid ? "yes" : "no",
                (long long)total_genus(base), (long long)q_of(base));

    auto certs = pp_roots(base, 2);
    std::printf("degree-2 roots: %zu\n", certs.size());
    for (const auto& c : certs) {
        std::printf("root    %s", to_text(c.root).c_str());
        for (const auto& w : c.witnesses)
            std::printf("        component %zu covers target %zu with exponent %lld\n",
                        w.component + 1, w.target + 1, (long long)w.u);
        auto chk = check_pp_root(c.root, base, 2);
        std::printf("        re-verified: %s\n", chk.ok ? "yes" : "no");

        auto prim = is_primitive(c.root);
        std::printf("        root primitive: %s (search bound %lld)\n",
                    prim.primitive ? "yes" : "no",
                    (long long)primitivity_search_bound(c.root));
    }

    auto bprim = is_primitive(base);
    std::printf("base primitive: %s\n", bprim.primitive ? "yes" : "no");

    // The fifth power of a separating twist in genus 2: every root degree
    // lands in [2q, 12q] = [10, 60], and both ends are attained.
    auto tc5 = multitwist_separating(1, 1, 5);
    std::printf("\nroot degrees of the separating fifth power:");
    for (i64 m = 2; m <= 60; ++m)
        if (auto rs = pp_roots(tc5, m); !rs.empty())
            std::printf(" %lld(x%zu)", (long long)m, rs.size());
    std::printf("\n");
    return 0;
}

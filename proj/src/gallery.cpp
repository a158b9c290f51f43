#include "alth/gallery.hpp"

namespace alth {
namespace gallery {

GeneratingAlgebra z2_generators() {
    GeneratingAlgebra g;
    g.base = FinSet::labeled({"0", "1"});
    g.ops.push_back({"e", 1, {0, 1}});
    g.ops.push_back({"a", 1, {1, 0}});
    return g;
}

GeneratingAlgebra pointed_monoid_generators() {
    GeneratingAlgebra g;
    g.base = FinSet::labeled({"0", "1"});
    g.ops.push_back({"a", 1, {1, 0}});
    g.ops.push_back({"z", 0, {0}});
    return g;
}

GeneratingAlgebra semilattice_generators() {
    GeneratingAlgebra g;
    g.base = FinSet::labeled({"0", "1"});
    g.ops.push_back({"meet", 2, {0, 0, 0, 1}});
    return g;
}

Theory initial_one() { return initial_theory(AritySystem::finite({1})); }

Theory initial_zero_one() { return initial_theory(AritySystem::finite({0, 1})); }

Theory initial_fincard(std::size_t window) {
    return initial_theory(AritySystem::fin_card(window));
}

Theory z2() {
    return theory_from_clone(z2_generators(), AritySystem::finite({1}), 200000, "Z2");
}

Theory pointed_monoid() {
    return theory_from_clone(pointed_monoid_generators(), AritySystem::finite({0, 1}), 200000,
                             "PointedZ2");
}

Theory semilattice(std::size_t window) {
    return theory_from_clone(semilattice_generators(), AritySystem::fin_card(window), 200000,
                             "SemiLat");
}

std::vector<Theory> all(std::size_t fincard_window) {
    return {initial_one(),    initial_zero_one(), initial_fincard(fincard_window),
            z2(),             pointed_monoid(),   semilattice(fincard_window)};
}

}  // namespace gallery
}  // namespace alth

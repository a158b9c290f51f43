#ifndef ALTH_GALLERY_HPP
#define ALTH_GALLERY_HPP

#include "alth/theory.hpp"

namespace alth {

/// The built-in instance gallery exercised by the test and acceptance
/// suites: initial theories on {1}, {0,1} and the finite-cardinal window,
/// the Z/2 monoid-action theory, a pointed monoid on {0,1}, and the
/// meet-semilattice clone theory.
namespace gallery {

Theory initial_one();                        // arities {1}
Theory initial_zero_one();                   // arities {0,1}
Theory initial_fincard(std::size_t window = 4);
Theory z2();                                 // unary clone of Z/2 on {1}
Theory pointed_monoid();                     // Z/2 action with constants, on {0,1}
Theory semilattice(std::size_t window = 3);  // meet on {0,1}, fin_card

std::vector<Theory> all(std::size_t fincard_window = 3);

/// The generating data behind z2/pointed_monoid/semilattice, for tests that
/// need the raw signature tables.
GeneratingAlgebra z2_generators();
GeneratingAlgebra pointed_monoid_generators();
GeneratingAlgebra semilattice_generators();

}  // namespace gallery

}  // namespace alth

#endif

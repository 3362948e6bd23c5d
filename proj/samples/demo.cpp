// Prints c_{w0}, the normalized Whittaker value at lambda = 0 and N(chi, 0)
// for the double cover of A2.
#include <iostream>

#include "mpw/mpw.hpp"

int main() {
  const mpw::MetaplecticStructure m = mpw::make_cover("A2", 2, {1, 1});
  const mpw::LatticeVector zero = mpw::LatticeVector::from({0, 0});
  std::cout << "|Gamma| = " << m.cosets().size() << "\n";
  std::cout << "c_w0 = " << mpw::to_latex(mpw::c_w(m, m.datum().longest())) << "\n";
  std::cout << "W(0) = " << mpw::to_latex(mpw::whittaker_normalized(m, zero).value) << "\n";
  std::cout << "N(0) = " << mpw::to_latex(mpw::n_poly(m, zero)) << "\n";
  std::cout << "final theorem: " << (mpw::check_final_theorem(m, zero) ? "holds" : "fails") << "\n";
}

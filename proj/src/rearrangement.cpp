#include "rlab/rearrangement.hpp"

namespace rlab {

template LatticeFunction<double> rearrange(const LatticeFunction<double>&, const Enumeration&);
template LatticeFunction<Rational> rearrange(const LatticeFunction<Rational>&, const Enumeration&);
template RatioReport ps_ratio(const LatticeFunction<double>&, const Enumeration&, const Exponent&);
template RatioReport ps_ratio(const LatticeFunction<Rational>&, const Enumeration&, const Exponent&);

}  // namespace rlab

#ifndef FILLVOL_NUMERIC_HPP
#define FILLVOL_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace fillvol {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return numerator(q); }
inline Int rat_den(const Rat& q) { return denominator(q); }

inline int sign(const Int& x) { return x.sign(); }
inline int sign(const Rat& x) { return x.sign(); }

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }
inline Rat abs_rat(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// floor(a/b) for b != 0, rounding toward -infinity.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int rat_floor(const Rat& q) { return floor_div(rat_num(q), rat_den(q)); }
inline Int rat_ceil(const Rat& q) { return -rat_floor(-q); }

inline Int int_pow(const Int& base, unsigned long e) {
    return boost::multiprecision::pow(base, e);
}

// "p/q" or plain decimal integer.
std::string format_rat(const Rat& q);
Rat parse_rat(const std::string& s);
std::string format_int(const Int& x);
Int parse_int(const std::string& s);

inline std::string format_rat(const Rat& q) {
    if (rat_den(q) == 1) return rat_num(q).str();
    return rat_num(q).str() + "/" + rat_den(q).str();
}

inline std::string format_int(const Int& x) { return x.str(); }

inline Int parse_int(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    return Int(s);
}

inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_int(s));
    Int num = parse_int(s.substr(0, slash));
    Int den = parse_int(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rat(num, den);
}

} // namespace fillvol

#endif

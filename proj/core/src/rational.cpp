#include "vclab/rational.hpp"

#include <cctype>

#include "vclab/errors.hpp"

namespace vclab {

Rat parse_rational(const std::string& text) {
    if (text.empty()) throw DomainError("parse_rational: empty string");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw DomainError("parse_rational: zero denominator in '" + text + "'");
        return Rat(num, den);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        for (char c : frac)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw DomainError("parse_rational: bad decimal '" + text + "'");
        bool neg = !whole.empty() && whole[0] == '-';
        if (!whole.empty() && (whole[0] == '+' || whole[0] == '-')) whole = whole.substr(1);
        Int den(1);
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        Int num = (whole.empty() ? Int(0) : Int(whole)) * den + (frac.empty() ? Int(0) : Int(frac));
        if (neg) num = -num;
        return Rat(num, den);
    }
    return Rat(Int(text));
}

std::string rat_to_string(const Rat& r) {
    if (r.denominator() == 1) return r.numerator().str();
    return r.numerator().str() + "/" + r.denominator().str();
}

Int binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int result = 1;
    for (int i = 0; i < k; ++i) {
        result *= n - i;
        result /= i + 1;
    }
    return result;
}

}  // namespace vclab

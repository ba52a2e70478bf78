#include "incr/numeric.hpp"

#include <cctype>
#include <cstdio>

namespace incr {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
}

} // namespace

Rat parse_rat(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rat value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view num = s.substr(0, slash);
        std::string_view den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw Error(Errc::BadParam, "malformed rational '" + std::string(text) + "'");
        BigInt d{std::string(den)};
        if (d == 0)
            throw Error(Errc::BadParam, "zero denominator in '" + std::string(text) + "'");
        value = Rat(BigInt{std::string(num)}, d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac)))
            throw Error(Errc::BadParam, "malformed number '" + std::string(text) + "'");
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        BigInt num = whole.empty() ? BigInt(0) : BigInt{std::string(whole)};
        num *= scale;
        if (!frac.empty()) num += BigInt{std::string(frac)};
        value = Rat(num, scale);
    } else {
        if (!all_digits(s))
            throw Error(Errc::BadParam, "malformed number '" + std::string(text) + "'");
        value = Rat(BigInt{std::string(s)});
    }
    return negative ? Rat(-value) : value;
}

std::string rat_to_string(const Rat& r) {
    std::string num = numerator(r).str();
    if (denominator(r) == 1) return num;
    return num + "/" + denominator(r).str();
}

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace incr

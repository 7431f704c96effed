#pragma once

#include <charconv>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsplit/methods.hpp"

namespace nsplit {

struct CatalogEntry {
    std::string id;
    std::string summary;
    bool parametric = false;
};

/// Built-in method ids. Chain methods are two-term composition towers:
/// cltP raises clt2 step by step, cstrangP raises strang.
inline std::vector<CatalogEntry> method_catalog() {
    return {
        {"lt", "first-order splitting, one full step per operator", false},
        {"strang", "second-order symmetric splitting", false},
        {"clt2", "two-stage second-order complex splitting (coefficients 1/2 +- i/2)", false},
        {"clt2-conj", "conjugate of clt2", false},
        {"clt3", "third-order composition of clt2", false},
        {"clt4", "fourth-order composition chain from clt2", false},
        {"clt5", "fifth-order composition chain from clt2", false},
        {"clt6", "sixth-order composition chain from clt2", false},
        {"cstrang3", "third-order composition of strang, (2N-1)-stage", false},
        {"cstrang4", "fourth-order composition chain from strang", false},
        {"cstrang5", "fifth-order composition chain from strang", false},
        {"cstrang6", "sixth-order composition chain from strang", false},
        {"family2(b)", "one-parameter two-stage second-order 2-split family (complex b != 1)", true},
    };
}

namespace detail {

inline std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return v;
}

/// Accepts "a", "a+bi", "a-bi" (also with a trailing "j").
inline std::optional<Cplx> parse_complex(std::string_view s) {
    if (s.empty()) return std::nullopt;
    if (s.back() == 'i' || s.back() == 'j') {
        s.remove_suffix(1);
        // split at the last +/- that is not an exponent sign or leading sign
        for (std::size_t k = s.size(); k-- > 1;) {
            const char ch = s[k];
            if ((ch == '+' || ch == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
                const auto re = parse_double(s.substr(0, k));
                std::string_view imag_part = s.substr(k);
                double im_sign = imag_part.front() == '-' ? -1.0 : 1.0;
                imag_part.remove_prefix(1);
                const auto im = imag_part.empty() ? std::optional<double>(1.0) : parse_double(imag_part);
                if (re && im) return Cplx{*re, im_sign * *im};
                return std::nullopt;
            }
        }
        const auto im = parse_double(s);
        if (im) return Cplx{0.0, *im};
        return std::nullopt;
    }
    const auto re = parse_double(s);
    if (re) return Cplx{*re, 0.0};
    return std::nullopt;
}

inline MethodTable chain_from(MethodTable base, int target_order, const std::string& name) {
    MethodTable t = std::move(base);
    for (int p = 3; p <= target_order; ++p) t = compose(t, composition_sigma(p));
    t.name = name;
    return t;
}

}  // namespace detail

/// Builds a method table from a catalog id. Ids may carry an explicit
/// "-<N>" arity suffix (e.g. "lt-3"), which overrides n_operators.
inline MethodTable make_method(const std::string& id, int n_operators) {
    std::string base = id;

    // family2(<complex b>)
    if (base.starts_with("family2(") && base.ends_with(")")) {
        const auto b = detail::parse_complex(std::string_view(base).substr(8, base.size() - 9));
        if (!b) throw std::invalid_argument("make_method: cannot parse parameter in '" + id + "'");
        if (n_operators != 2) throw std::invalid_argument("make_method: family2 is a 2-split method");
        return two_split_family(*b);
    }

    // trailing arity suffix
    const auto dash = base.find_last_of('-');
    if (dash != std::string::npos && dash + 1 < base.size()) {
        const std::string_view tail = std::string_view(base).substr(dash + 1);
        int n = 0;
        auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), n);
        if (ec == std::errc{} && ptr == tail.data() + tail.size()) {
            n_operators = n;
            base = base.substr(0, dash);
        }
    }

    if (base == "lt") return lie_trotter(n_operators);
    if (base == "strang") return strang(n_operators);
    if (base == "clt2") return clt2(n_operators, false);
    if (base == "clt2-conj") return clt2(n_operators, true);
    for (int p = 3; p <= 6; ++p) {
        if (base == "clt" + std::to_string(p))
            return detail::chain_from(clt2(n_operators, false), p, base);
        if (base == "cstrang" + std::to_string(p))
            return detail::chain_from(strang(n_operators), p, base);
    }
    throw std::invalid_argument("make_method: unknown method id '" + id + "'");
}

}  // namespace nsplit

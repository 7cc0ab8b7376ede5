// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 z3ro-sim contributors

#include "z3ro/pa.hpp"

#include <cmath>
#include <stdexcept>

namespace z3ro {

namespace {

cxd amplify_one(const IdealLinear&, cxd x) { return x; }

cxd amplify_one(const ThirdOrder& m, cxd x) { return x + m.a3 * x * std::norm(x); }

cxd amplify_one(const Rapp& m, cxd x) {
    const double a = std::norm(x) / m.p_sat;
    if (a == 0.0) return x;
    // S = 2 is the workhorse configuration; avoid two pow calls there.
    double den;
    if (m.smoothness_S == 2.0) {
        den = std::sqrt(std::sqrt(1.0 + a * a));
    } else {
        den = std::pow(1.0 + std::pow(a, m.smoothness_S),
                       1.0 / (2.0 * m.smoothness_S));
    }
    return x / den;
}

cxd amplify_one(const SoftLimiter& m, cxd x) {
    const double n2 = std::norm(x);
    if (n2 <= m.p_sat) return x;
    return x * std::sqrt(m.p_sat / n2);
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

double parse_real(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string("pa: cannot parse ") + what +
                                    " value '" + s + "'");
    }
}

cxd parse_complex(const std::string& raw, const char* what) {
    const std::string s = trim(raw);
    if (s.empty())
        throw std::invalid_argument(std::string("pa: empty ") + what + " value");
    if (s.front() == '(' && s.back() == ')') {
        const auto comma = s.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument(std::string("pa: bad ") + what +
                                        " tuple '" + s + "'");
        return {parse_real(s.substr(1, comma - 1), what),
                parse_real(s.substr(comma + 1, s.size() - comma - 2), what)};
    }
    if (s.back() == 'j' || s.back() == 'i') {
        const std::string body = s.substr(0, s.size() - 1);
        // Split at the last sign that is not leading and not an exponent sign.
        std::size_t split = std::string::npos;
        for (std::size_t k = body.size(); k-- > 1;) {
            if ((body[k] == '+' || body[k] == '-') &&
                body[k - 1] != 'e' && body[k - 1] != 'E') {
                split = k;
                break;
            }
        }
        if (split == std::string::npos)
            return {0.0, parse_real(body.empty() ? "1" : body, what)};
        return {parse_real(body.substr(0, split), what),
                parse_real(body.substr(split), what)};
    }
    return {parse_real(s, what), 0.0};
}

struct KvList {
    std::vector<std::pair<std::string, std::string>> items;
};

KvList parse_kv(std::string_view text) {
    KvList out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        // Commas inside parentheses belong to a tuple value, not the list.
        std::size_t end = pos;
        int depth = 0;
        while (end < text.size() && (text[end] != ',' || depth > 0)) {
            if (text[end] == '(') ++depth;
            if (text[end] == ')' && depth > 0) --depth;
            ++end;
        }
        const std::string item = trim(text.substr(pos, end - pos));
        if (!item.empty()) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("pa: expected key=value, got '" +
                                            item + "'");
            out.items.emplace_back(trim(item.substr(0, eq)),
                                   trim(item.substr(eq + 1)));
        }
        pos = end + 1;
    }
    return out;
}

} // namespace

cxd amplify(const PaModel& model, cxd x) {
    return std::visit([x](const auto& m) { return amplify_one(m, x); }, model);
}

ComplexVec amplify_vec(const PaModel& model, const ComplexVec& x) {
    ComplexVec y(x.size());
    std::visit(
        [&](const auto& m) {
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = amplify_one(m, x[i]);
        },
        model);
    return y;
}

PaModel parse_pa_spec(std::string_view text) {
    const std::string spec = trim(text);
    const auto colon = spec.find(':');
    const std::string kind =
        colon == std::string::npos ? spec : trim(spec.substr(0, colon));
    const std::string params =
        colon == std::string::npos ? "" : spec.substr(colon + 1);

    if (kind == "linear") {
        if (!trim(params).empty())
            throw std::invalid_argument("pa: linear takes no parameters");
        return IdealLinear{};
    }

    const KvList kv = parse_kv(params);
    auto find = [&](const char* key) -> const std::string* {
        for (const auto& [k, v] : kv.items)
            if (k == key) return &v;
        return nullptr;
    };
    auto reject_unknown = [&](std::initializer_list<const char*> allowed) {
        for (const auto& [k, v] : kv.items) {
            (void)v;
            bool ok = false;
            for (const char* a : allowed) ok = ok || (k == a);
            if (!ok)
                throw std::invalid_argument("pa: unknown parameter '" + k +
                                            "' for " + kind);
        }
    };

    if (kind == "third-order") {
        reject_unknown({"a3"});
        const std::string* a3 = find("a3");
        if (!a3) throw std::invalid_argument("pa: third-order requires a3=");
        const cxd v = parse_complex(*a3, "a3");
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("pa: a3 must be finite");
        return ThirdOrder{v};
    }
    if (kind == "rapp") {
        reject_unknown({"S", "psat"});
        const std::string* S = find("S");
        const std::string* psat = find("psat");
        if (!S || !psat)
            throw std::invalid_argument("pa: rapp requires S= and psat=");
        const double sv = parse_real(*S, "S");
        const double pv = parse_real(*psat, "psat");
        if (!(sv > 0.0))
            throw std::invalid_argument("pa: S must be positive");
        if (!(pv > 0.0))
            throw std::invalid_argument("pa: psat must be positive");
        return Rapp{sv, pv};
    }
    if (kind == "softlim") {
        reject_unknown({"psat"});
        const std::string* psat = find("psat");
        if (!psat) throw std::invalid_argument("pa: softlim requires psat=");
        const double pv = parse_real(*psat, "psat");
        if (!(pv > 0.0))
            throw std::invalid_argument("pa: psat must be positive");
        return SoftLimiter{pv};
    }
    throw std::invalid_argument("pa: unknown model '" + kind +
                                "' (expected linear, third-order, rapp, softlim)");
}

std::string pa_spec_string(const PaModel& model) {
    struct Printer {
        std::string operator()(const IdealLinear&) const { return "linear"; }
        std::string operator()(const ThirdOrder& m) const {
            std::string s = "third-order:a3=" + format_double(m.a3.real());
            if (m.a3.imag() != 0.0) {
                if (m.a3.imag() > 0.0) s += '+';
                s += format_double(m.a3.imag()) + 'j';
            }
            return s;
        }
        std::string operator()(const Rapp& m) const {
            return "rapp:S=" + format_double(m.smoothness_S) +
                   ",psat=" + format_double(m.p_sat);
        }
        std::string operator()(const SoftLimiter& m) const {
            return "softlim:psat=" + format_double(m.p_sat);
        }
    };
    return std::visit(Printer{}, model);
}

PaModel with_p_sat(const PaModel& model, double p_sat) {
    if (!(p_sat > 0.0))
        throw std::invalid_argument("with_p_sat: p_sat must be positive");
    if (const auto* r = std::get_if<Rapp>(&model))
        return Rapp{r->smoothness_S, p_sat};
    if (std::holds_alternative<SoftLimiter>(model)) return SoftLimiter{p_sat};
    throw std::invalid_argument("with_p_sat: model has no saturation power");
}

bool has_p_sat(const PaModel& model) {
    return std::holds_alternative<Rapp>(model) ||
           std::holds_alternative<SoftLimiter>(model);
}

} // namespace z3ro

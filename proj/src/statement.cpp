#include "figedit/statement.hpp"

#include "figedit/error.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace figedit {

bool Literal::is_number() const noexcept
{
    return std::holds_alternative<double>(value) || std::holds_alternative<std::int64_t>(value);
}

double Literal::as_real() const
{
    if (auto d = std::get_if<double>(&value)) return *d;
    if (auto i = std::get_if<std::int64_t>(&value)) return static_cast<double>(*i);
    throw Error(ErrorKind::TypeMismatch, "expected a number");
}

const std::string& Literal::as_string() const
{
    if (auto s = std::get_if<std::string>(&value)) return *s;
    throw Error(ErrorKind::TypeMismatch, "expected a string");
}

bool Literal::as_bool() const
{
    if (auto b = std::get_if<bool>(&value)) return *b;
    throw Error(ErrorKind::TypeMismatch, "expected a boolean");
}

const Literal::List& Literal::as_list() const
{
    if (auto l = std::get_if<List>(&value)) return *l;
    throw Error(ErrorKind::TypeMismatch, "expected a list");
}

namespace {

constexpr int kMaxFractionDigits = 6;
constexpr double kFixedLow = 1e-4;
constexpr double kFixedHigh = 1e7;

std::string chars(double v, std::chars_format fmt)
{
    std::array<char, 400> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, fmt);
    return std::string(buf.data(), res.ptr);
}

std::string chars(double v, std::chars_format fmt, int precision)
{
    std::array<char, 400> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, fmt, precision);
    return std::string(buf.data(), res.ptr);
}

double read_real(const std::string& s)
{
    double v = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
}

std::size_t fraction_digits(std::string_view mantissa)
{
    auto dot = mantissa.find('.');
    return dot == std::string_view::npos ? 0 : mantissa.size() - dot - 1;
}

void trim_fraction(std::string& mantissa)
{
    if (mantissa.find('.') == std::string::npos) return;
    while (mantissa.back() == '0') mantissa.pop_back();
    if (mantissa.back() == '.') mantissa.pop_back();
}

std::string fixed_form(double v)
{
    std::string s = chars(v, std::chars_format::fixed);
    if (fraction_digits(s) > kMaxFractionDigits) {
        s = chars(v, std::chars_format::fixed, kMaxFractionDigits);
        trim_fraction(s);
    }
    if (s.find('.') == std::string::npos) s += ".0";
    return s;
}

std::string exponent_form(double v)
{
    std::string s = chars(v, std::chars_format::scientific);
    auto e = s.find('e');
    if (fraction_digits(std::string_view(s).substr(0, e)) > kMaxFractionDigits) {
        s = chars(v, std::chars_format::scientific, kMaxFractionDigits);
        e = s.find('e');
    }
    std::string mantissa = s.substr(0, e);
    trim_fraction(mantissa);
    int exponent = std::stoi(s.substr(e + 1));
    return mantissa + "e" + std::to_string(exponent);
}

bool in_fixed_range(double v)
{
    const double a = std::fabs(v);
    return a >= kFixedLow && a < kFixedHigh;
}

}  // namespace

std::string format_real(double v)
{
    if (!std::isfinite(v)) throw Error(ErrorKind::InvariantViolation, "non-finite real");
    if (v == 0.0) return std::signbit(v) ? "-0.0" : "0.0";
    if (in_fixed_range(v)) {
        std::string s = fixed_form(v);
        const double w = read_real(s);
        return in_fixed_range(w) ? s : exponent_form(w);
    }
    std::string s = exponent_form(v);
    const double w = read_real(s);
    return in_fixed_range(w) ? fixed_form(w) : s;
}

namespace {

std::string quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string format_literal(const Literal& lit)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                return format_real(v);
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, std::string>) {
                return quote(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else {
                std::string out = "[";
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) out += ", ";
                    out += format_literal(v[i]);
                }
                return out + "]";
            }
        },
        lit.value);
}

Literal canonical_literal(const Literal& lit)
{
    if (auto d = std::get_if<double>(&lit.value)) return Literal(read_real(format_real(*d)));
    if (auto l = std::get_if<Literal::List>(&lit.value)) {
        Literal::List out;
        out.reserve(l->size());
        for (const auto& item : *l) out.push_back(canonical_literal(item));
        return Literal(std::move(out));
    }
    return lit;
}

std::span<const MethodSpec> core_methods()
{
    using A = ArgType;
    using T = TargetKind;
    static const std::vector<MethodSpec> methods = {
        {T::Figure, "set_size_cm", {A::Real, A::Real}, std::nullopt},
        {T::Figure, "set_dpi", {A::Real}, std::nullopt},
        {T::Figure, "add_axes", {A::Rect}, SegmentKind::Axes},

        {T::Axes, "set_position", {A::Rect}, std::nullopt},
        {T::Axes, "set_xlim", {A::Real, A::Real}, std::nullopt},
        {T::Axes, "set_ylim", {A::Real, A::Real}, std::nullopt},
        {T::Axes, "set_xlabel", {A::String}, std::nullopt},
        {T::Axes, "set_ylabel", {A::String}, std::nullopt},
        {T::Axes, "set_title", {A::String}, std::nullopt},
        {T::Axes, "set_xticks", {A::RealList}, std::nullopt},
        {T::Axes, "set_xticklabels", {A::StringList}, std::nullopt},
        {T::Axes, "set_yticks", {A::RealList}, std::nullopt},
        {T::Axes, "set_yticklabels", {A::StringList}, std::nullopt},
        {T::Axes, "plot_csv", {A::String, A::String, A::String}, SegmentKind::Lines},
        {T::Axes, "text", {A::Real, A::Real, A::String}, SegmentKind::Texts},
        {T::Axes, "legend", {}, SegmentKind::Legend},
        {T::Axes, "grid", {A::Bool}, std::nullopt},

        {T::Text, "set_text", {A::String}, std::nullopt},
        {T::Text, "set_position", {A::Real, A::Real}, std::nullopt},
        {T::Text, "set_fontsize", {A::Real}, std::nullopt},
        {T::Text, "set_color", {A::String}, std::nullopt},
        {T::Text, "set_rotation", {A::Real}, std::nullopt},
        {T::Text, "set_weight", {A::String}, std::nullopt},

        {T::Legend, "set_loc_fraction", {A::Real, A::Real}, std::nullopt},
        {T::Legend, "set_visible", {A::Bool}, std::nullopt},
    };
    return methods;
}

const MethodSpec* find_method(TargetKind target, std::string_view name)
{
    for (const auto& m : core_methods())
        if (m.target == target && m.name == name) return &m;
    return nullptr;
}

std::string_view to_string(TargetKind kind) noexcept
{
    switch (kind) {
    case TargetKind::Figure: return "figure";
    case TargetKind::Axes: return "axes";
    case TargetKind::Text: return "text";
    case TargetKind::Series: return "line";
    case TargetKind::Legend: return "legend";
    }
    return "element";
}

namespace {

bool matches(ArgType type, const Literal& lit)
{
    switch (type) {
    case ArgType::Real: return lit.is_number();
    case ArgType::String: return lit.is_string();
    case ArgType::Bool: return lit.is_bool();
    case ArgType::RealList:
    case ArgType::Rect:
        if (!lit.is_list()) return false;
        for (const auto& item : lit.as_list())
            if (!item.is_number()) return false;
        return true;
    case ArgType::StringList:
        if (!lit.is_list()) return false;
        for (const auto& item : lit.as_list())
            if (!item.is_string()) return false;
        return true;
    }
    return false;
}

}  // namespace

const MethodSpec& check_signature(const Statement& stmt)
{
    if (!stmt.path)
        throw Error(ErrorKind::UnknownMethod, "'" + stmt.method + "' is not a core method");
    const TargetKind target = stmt.path->target_kind();
    const MethodSpec* spec = find_method(target, stmt.method);
    if (!spec)
        throw Error(ErrorKind::UnknownMethod,
                    "'" + stmt.method + "' is not a core method of " + std::string(to_string(target)));
    if (stmt.args.size() != spec->params.size())
        throw Error(ErrorKind::ArityMismatch,
                    stmt.method + " takes " + std::to_string(spec->params.size()) + " argument(s), got " +
                        std::to_string(stmt.args.size()));
    for (std::size_t i = 0; i < stmt.args.size(); ++i) {
        if (!matches(spec->params[i], stmt.args[i]))
            throw Error(ErrorKind::TypeMismatch,
                        stmt.method + ": argument " + std::to_string(i + 1) + " has the wrong type");
        if (spec->params[i] == ArgType::Rect && stmt.args[i].as_list().size() != 4)
            throw Error(ErrorKind::TypeMismatch, stmt.method + ": expected a [x, y, w, h] list");
    }
    return *spec;
}

}  // namespace figedit

#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include <json.hpp>

#include "steadytime/poly.hpp"

namespace steadytime {

/// Piecewise polynomial over [l0, lm] with strictly increasing breakpoints.
/// Evaluation at an interior breakpoint uses the right-hand piece; the
/// right domain endpoint uses the last piece.
template <class T>
class PiecewisePoly {
public:
    PiecewisePoly() = default;
    PiecewisePoly(std::vector<T> breakpoints, std::vector<Polynomial<T>> pieces)
        : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
        if (breakpoints_.size() < 2 || pieces_.size() + 1 != breakpoints_.size())
            throw DomainError("PiecewisePoly: piece count must be breakpoint count - 1");
        for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
            if (!(breakpoints_[i] < breakpoints_[i + 1]))
                throw DomainError("PiecewisePoly: breakpoints must be strictly increasing");
    }

    static PiecewisePoly constant(T l0, T lm, T value) {
        return PiecewisePoly({std::move(l0), std::move(lm)},
                             {Polynomial<T>::constant(std::move(value))});
    }

    const std::vector<T>& breakpoints() const { return breakpoints_; }
    const std::vector<Polynomial<T>>& pieces() const { return pieces_; }
    const T& lo() const { return breakpoints_.front(); }
    const T& hi() const { return breakpoints_.back(); }
    std::size_t piece_count() const { return pieces_.size(); }

    std::size_t piece_index(const T& x) const {
        if (x < lo() || hi() < x)
            throw DomainError("PiecewisePoly: abscissa outside domain");
        if (!(x < hi())) return pieces_.size() - 1;
        auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
        return std::size_t(it - breakpoints_.begin()) - 1;
    }

    T operator()(const T& x) const { return pieces_[piece_index(x)](x); }

    /// Limit from the left at an abscissa (> lo); differs from operator()
    /// only at breakpoints of a discontinuous function.
    T eval_left(const T& x) const {
        if (!(lo() < x) || hi() < x)
            throw DomainError("PiecewisePoly: abscissa outside domain");
        auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
        std::size_t i = std::size_t(it - breakpoints_.begin());
        if (it != breakpoints_.end() && *it == x && i > 0) return pieces_[i - 1](x);
        return (*this)(x);
    }

    PiecewisePoly derivative() const {
        std::vector<Polynomial<T>> d;
        d.reserve(pieces_.size());
        for (const auto& p : pieces_) d.push_back(p.derivative());
        return PiecewisePoly(breakpoints_, std::move(d));
    }

    /// Continuous antiderivative F with F' = *this piecewise and
    /// F(anchor) = anchor_value. Piece constants are chained left to
    /// right so F matches across every breakpoint.
    PiecewisePoly antiderivative(const T& anchor, const T& anchor_value) const {
        std::vector<Polynomial<T>> anti;
        anti.reserve(pieces_.size());
        for (const auto& p : pieces_) anti.push_back(p.antiderivative());
        // chain constants: piece i+1 agrees with piece i at breakpoint i+1
        std::vector<T> shift(pieces_.size(), T(0));
        for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
            const T& b = breakpoints_[i + 1];
            shift[i + 1] = shift[i] + anti[i](b) - anti[i + 1](b);
        }
        std::vector<Polynomial<T>> out;
        out.reserve(pieces_.size());
        for (std::size_t i = 0; i < pieces_.size(); ++i)
            out.push_back(anti[i] + Polynomial<T>::constant(shift[i]));
        PiecewisePoly F(breakpoints_, std::move(out));
        T offset = anchor_value - F(anchor);
        for (auto& p : F.pieces_) p = p + Polynomial<T>::constant(offset);
        return F;
    }

    T definite_integral(const T& a, const T& b) const {
        if (b < a) throw DomainError("definite_integral: reversed bounds");
        if (a < lo() || hi() < b)
            throw DomainError("definite_integral: bounds outside domain");
        T sum(0);
        if constexpr (std::is_same_v<T, double>) {
            // compensated summation across pieces
            double comp = 0.0;
            auto add = [&](double v) {
                double y = v - comp;
                double t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            };
            for_each_span(a, b, [&](std::size_t i, const T& x0, const T& x1) {
                auto F = pieces_[i].antiderivative();
                add(F(x1) - F(x0));
            });
        } else {
            for_each_span(a, b, [&](std::size_t i, const T& x0, const T& x1) {
                auto F = pieces_[i].antiderivative();
                sum += F(x1) - F(x0);
            });
        }
        return sum;
    }

    enum class Op { Add, Sub, Mul };

    static PiecewisePoly arith(const PiecewisePoly& f, const PiecewisePoly& g, Op op) {
        if (!(f.lo() == g.lo()) || !(f.hi() == g.hi()))
            throw DomainError("arith: mismatched domains");
        std::vector<T> bp;
        std::merge(f.breakpoints_.begin(), f.breakpoints_.end(),
                   g.breakpoints_.begin(), g.breakpoints_.end(), std::back_inserter(bp));
        bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
        std::vector<Polynomial<T>> pieces;
        pieces.reserve(bp.size() - 1);
        for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
            const auto& pf = f.pieces_[f.piece_index(bp[i])];
            const auto& pg = g.pieces_[g.piece_index(bp[i])];
            switch (op) {
                case Op::Add: pieces.push_back(pf + pg); break;
                case Op::Sub: pieces.push_back(pf - pg); break;
                case Op::Mul: pieces.push_back(pf * pg); break;
            }
        }
        return PiecewisePoly(std::move(bp), std::move(pieces));
    }

    friend PiecewisePoly operator+(const PiecewisePoly& f, const PiecewisePoly& g) {
        return arith(f, g, Op::Add);
    }
    friend PiecewisePoly operator-(const PiecewisePoly& f, const PiecewisePoly& g) {
        return arith(f, g, Op::Sub);
    }
    friend PiecewisePoly operator*(const PiecewisePoly& f, const PiecewisePoly& g) {
        return arith(f, g, Op::Mul);
    }
    PiecewisePoly scaled(const T& s) const {
        std::vector<Polynomial<T>> p;
        p.reserve(pieces_.size());
        for (const auto& q : pieces_) p.push_back(q.scaled(s));
        return PiecewisePoly(breakpoints_, std::move(p));
    }

    /// Interior breakpoints where left and right limits disagree.
    std::vector<T> discontinuities() const {
        std::vector<T> out;
        for (std::size_t i = 1; i + 1 < breakpoints_.size(); ++i) {
            const T& b = breakpoints_[i];
            if (!(pieces_[i - 1](b) == pieces_[i](b))) out.push_back(b);
        }
        return out;
    }

    PiecewisePoly<double> to_double() const {
        std::vector<double> bp;
        bp.reserve(breakpoints_.size());
        for (const auto& b : breakpoints_) bp.push_back(steadytime::to_double(b));
        std::vector<Polynomial<double>> pieces;
        pieces.reserve(pieces_.size());
        for (const auto& p : pieces_) {
            std::vector<double> c;
            c.reserve(p.coeffs().size());
            for (const auto& v : p.coeffs()) c.push_back(steadytime::to_double(v));
            pieces.emplace_back(std::move(c));
        }
        return PiecewisePoly<double>(std::move(bp), std::move(pieces));
    }

private:
    template <class Fn>
    void for_each_span(const T& a, const T& b, Fn&& fn) const {
        if (!(a < b)) return;
        std::size_t i0 = piece_index(a);
        std::size_t i1 = b == hi() ? pieces_.size() - 1 : piece_index(b);
        for (std::size_t i = i0; i <= i1; ++i) {
            const T& x0 = i == i0 ? a : breakpoints_[i];
            const T& x1 = i == i1 ? b : breakpoints_[i + 1];
            if (x0 < x1) fn(i, x0, x1);
        }
    }

    std::vector<T> breakpoints_;
    std::vector<Polynomial<T>> pieces_;
};

// --- JSON serialization: {"breakpoints": [...], "pieces": [[c0,c1,...], ...]} ---
// Rationals appear as "p/q" strings; doubles as numbers. Parsing accepts both.

namespace detail {
inline nlohmann::json coef_to_json(double v) { return v; }
inline nlohmann::json coef_to_json(const Rational& v) { return to_string(v); }

template <class T>
T coef_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        Rational r = rational_from_string(j.get<std::string>());
        if constexpr (std::is_same_v<T, double>) return to_double(r);
        else return r;
    }
    return field_from_double<T>(j.get<double>());
}
} // namespace detail

template <class T>
nlohmann::json to_json(const PiecewisePoly<T>& f) {
    nlohmann::json j;
    j["breakpoints"] = nlohmann::json::array();
    for (const auto& b : f.breakpoints()) j["breakpoints"].push_back(detail::coef_to_json(b));
    j["pieces"] = nlohmann::json::array();
    for (const auto& p : f.pieces()) {
        nlohmann::json piece = nlohmann::json::array();
        for (const auto& c : p.coeffs()) piece.push_back(detail::coef_to_json(c));
        j["pieces"].push_back(std::move(piece));
    }
    return j;
}

template <class T>
PiecewisePoly<T> pwpoly_from_json(const nlohmann::json& j) {
    if (!j.contains("breakpoints") || !j.contains("pieces"))
        throw ConfigError("PiecewisePoly JSON needs 'breakpoints' and 'pieces'");
    std::vector<T> bp;
    for (const auto& b : j.at("breakpoints")) bp.push_back(detail::coef_from_json<T>(b));
    std::vector<Polynomial<T>> pieces;
    for (const auto& pj : j.at("pieces")) {
        std::vector<T> c;
        for (const auto& cj : pj) c.push_back(detail::coef_from_json<T>(cj));
        pieces.emplace_back(std::move(c));
    }
    return PiecewisePoly<T>(std::move(bp), std::move(pieces));
}

} // namespace steadytime

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "edsp/arith.hpp"

namespace edsp {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over the rationals.
///
/// The long form is kept as given; no change of model is ever applied, so the
/// denominators of multiples of a point are those of this exact equation.
class Curve {
  public:
    /// Throws PreconditionError when the discriminant vanishes.
    Curve(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6);

    const Rational& a1() const noexcept { return a1_; }
    const Rational& a2() const noexcept { return a2_; }
    const Rational& a3() const noexcept { return a3_; }
    const Rational& a4() const noexcept { return a4_; }
    const Rational& a6() const noexcept { return a6_; }

    Rational b2() const;
    Rational b4() const;
    Rational b6() const;
    Rational b8() const;
    const Rational& discriminant() const noexcept { return disc_; }

    /// True when every coefficient is an integer.
    bool integral() const;

    std::string to_string() const;

    friend bool operator==(const Curve&, const Curve&) = default;

  private:
    Rational a1_, a2_, a3_, a4_, a6_;
    Rational disc_;
};

/// A rational point: either the point at infinity or an affine (x, y).
class Point {
  public:
    Point() = default;  // infinity
    Point(Rational x, Rational y);

    static Point infinity() { return {}; }

    bool is_infinity() const noexcept { return !coords_.has_value(); }
    /// Precondition: !is_infinity().
    const Rational& x() const { return coords_->x; }
    const Rational& y() const { return coords_->y; }

    std::string to_string() const;

    friend bool operator==(const Point&, const Point&) = default;

  private:
    struct Affine {
        Rational x, y;
        friend bool operator==(const Affine&, const Affine&) = default;
    };
    std::optional<Affine> coords_;
};

bool on_curve(const Curve& e, const Point& p);

Point negate(const Curve& e, const Point& p);
Point add(const Curve& e, const Point& p, const Point& q);
Point double_point(const Curve& e, const Point& p);

/// n * P by left-to-right double-and-add; 0 * P is infinity.
Point scalar_mul(const Curve& e, const Integer& n, const Point& p);
inline Point scalar_mul(const Curve& e, std::uint64_t n, const Point& p) {
    return scalar_mul(e, Integer(static_cast<unsigned long>(n)), p);
}

/// True iff nP != O for n = 1..12. By Mazur's theorem a rational point of
/// finite order has order at most 12, so this certifies infinite order.
/// Throws PreconditionError for P = O.
bool assert_infinite_order(const Curve& e, const Point& p);

}  // namespace edsp

#include "edsp/curve.hpp"

#include <sstream>

#include "edsp/errors.hpp"

namespace edsp {

Curve::Curve(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6)
    : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)), a4_(std::move(a4)),
      a6_(std::move(a6)) {
    const Rational c2 = b2(), c4 = b4(), c6 = b6(), c8 = b8();
    disc_ = -c2 * c2 * c8 - 8 * c4 * c4 * c4 - 27 * c6 * c6 + 9 * c2 * c4 * c6;
    if (disc_ == 0)
        throw PreconditionError("singular curve (discriminant 0): " + to_string());
}

Rational Curve::b2() const { return a1_ * a1_ + 4 * a2_; }
Rational Curve::b4() const { return 2 * a4_ + a1_ * a3_; }
Rational Curve::b6() const { return a3_ * a3_ + 4 * a6_; }
Rational Curve::b8() const {
    return a1_ * a1_ * a6_ + 4 * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ - a4_ * a4_;
}

bool Curve::integral() const {
    for (const Rational* c : {&a1_, &a2_, &a3_, &a4_, &a6_})
        if (c->get_den() != 1)
            return false;
    return true;
}

std::string Curve::to_string() const {
    std::ostringstream os;
    os << "[" << a1_ << ", " << a2_ << ", " << a3_ << ", " << a4_ << ", " << a6_ << "]";
    return os.str();
}

Point::Point(Rational x, Rational y) : coords_(Affine{std::move(x), std::move(y)}) {
    coords_->x.canonicalize();
    coords_->y.canonicalize();
}

std::string Point::to_string() const {
    if (is_infinity())
        return "O";
    std::ostringstream os;
    os << "(" << x() << ", " << y() << ")";
    return os.str();
}

bool on_curve(const Curve& e, const Point& p) {
    if (p.is_infinity())
        return true;
    const Rational& x = p.x();
    const Rational& y = p.y();
    return y * y + e.a1() * x * y + e.a3() * y == x * x * x + e.a2() * x * x + e.a4() * x + e.a6();
}

Point negate(const Curve& e, const Point& p) {
    if (p.is_infinity())
        return p;
    return Point(p.x(), -p.y() - e.a1() * p.x() - e.a3());
}

namespace {

Point chord_tangent(const Curve& e, const Point& p, const Point& q, const Rational& slope) {
    Rational nu = p.y() - slope * p.x();
    Rational x3 = slope * slope + e.a1() * slope - e.a2() - p.x() - q.x();
    Rational y3 = -(slope + e.a1()) * x3 - nu - e.a3();
    return Point(std::move(x3), std::move(y3));
}

}  // namespace

Point double_point(const Curve& e, const Point& p) {
    if (p.is_infinity())
        return p;
    Rational denom = 2 * p.y() + e.a1() * p.x() + e.a3();
    if (denom == 0)
        return Point::infinity();
    Rational slope =
        (3 * p.x() * p.x() + 2 * e.a2() * p.x() + e.a4() - e.a1() * p.y()) / denom;
    return chord_tangent(e, p, p, slope);
}

Point add(const Curve& e, const Point& p, const Point& q) {
    if (p.is_infinity())
        return q;
    if (q.is_infinity())
        return p;
    if (p.x() == q.x()) {
        if (p.y() == q.y())
            return double_point(e, p);
        return Point::infinity();  // q = -p
    }
    Rational slope = (q.y() - p.y()) / (q.x() - p.x());
    return chord_tangent(e, p, q, slope);
}

Point scalar_mul(const Curve& e, const Integer& n, const Point& p) {
    if (n < 0)
        return scalar_mul(e, Integer(-n), negate(e, p));
    Point acc;
    for (auto bit = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
        acc = double_point(e, acc);
        if (mpz_tstbit(n.get_mpz_t(), static_cast<mp_bitcnt_t>(bit)))
            acc = add(e, acc, p);
    }
    return acc;
}

bool assert_infinite_order(const Curve& e, const Point& p) {
    if (p.is_infinity())
        throw PreconditionError("the point at infinity has finite order");
    Point multiple = p;
    for (int n = 1; n <= 12; ++n) {
        if (multiple.is_infinity())
            return false;
        multiple = add(e, multiple, p);
    }
    return true;
}

}  // namespace edsp

#ifndef NOMSIG_ALGEBRA_CURVE_HPP_
#define NOMSIG_ALGEBRA_CURVE_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "nomsig/algebra/u256.hpp"

namespace nomsig::algebra {

// Short Weierstrass curve y^2 = x^3 + b in Jacobian coordinates.
// `Curve` supplies: `using Field`, `static Field b()`.
template <class Curve>
class JacobianPoint {
public:
    using Field = typename Curve::Field;

    constexpr JacobianPoint() : x_(Field::one()), y_(Field::one()), z_(Field::zero()) {}
    JacobianPoint(const Field& x, const Field& y) : x_(x), y_(y), z_(Field::one()) {}

    static JacobianPoint identity() { return JacobianPoint{}; }

    bool is_identity() const { return z_.is_zero(); }

    static bool on_curve(const Field& x, const Field& y) { return y.square() == x.square() * x + Curve::b(); }

    struct Affine {
        Field x;
        Field y;
        bool infinity = false;
    };

    Affine to_affine() const
    {
        if (is_identity()) return {Field::zero(), Field::zero(), true};
        if (z_ == Field::one()) return {x_, y_, false};
        Field zi = z_.inverse();
        Field zi2 = zi.square();
        return {x_ * zi2, y_ * zi2 * zi, false};
    }

    bool operator==(const JacobianPoint& o) const
    {
        if (is_identity() || o.is_identity()) return is_identity() == o.is_identity();
        Field z1z1 = z_.square();
        Field z2z2 = o.z_.square();
        if (x_ * z2z2 != o.x_ * z1z1) return false;
        return y_ * z2z2 * o.z_ == o.y_ * z1z1 * z_;
    }

    JacobianPoint operator-() const
    {
        JacobianPoint r = *this;
        r.y_ = -r.y_;
        return r;
    }

    JacobianPoint dbl() const
    {
        if (is_identity()) return *this;
        // dbl-2009-l
        Field a = x_.square();
        Field b = y_.square();
        Field c = b.square();
        Field d = ((x_ + b).square() - a - c).dbl();
        Field e = a.dbl() + a;
        Field f = e.square();
        JacobianPoint r;
        r.x_ = f - d.dbl();
        Field c8 = c.dbl().dbl().dbl();
        r.y_ = e * (d - r.x_) - c8;
        r.z_ = (y_ * z_).dbl();
        return r;
    }

    JacobianPoint operator+(const JacobianPoint& o) const
    {
        if (is_identity()) return o;
        if (o.is_identity()) return *this;
        if (o.z_ == Field::one()) return add_mixed(o);
        // add-2007-bl
        Field z1z1 = z_.square();
        Field z2z2 = o.z_.square();
        Field u1 = x_ * z2z2;
        Field u2 = o.x_ * z1z1;
        Field s1 = y_ * o.z_ * z2z2;
        Field s2 = o.y_ * z_ * z1z1;
        if (u1 == u2) {
            if (s1 == s2) return dbl();
            return identity();
        }
        Field h = u2 - u1;
        Field i = h.dbl().square();
        Field j = h * i;
        Field rr = (s2 - s1).dbl();
        Field v = u1 * i;
        JacobianPoint r;
        r.x_ = rr.square() - j - v.dbl();
        r.y_ = rr * (v - r.x_) - (s1 * j).dbl();
        r.z_ = ((z_ + o.z_).square() - z1z1 - z2z2) * h;
        return r;
    }

    JacobianPoint operator-(const JacobianPoint& o) const { return *this + (-o); }

    // Rescales every point to Z = 1 with a single field inversion.
    static void normalize_batch(std::span<JacobianPoint> pts)
    {
        std::vector<Field> prefix(pts.size());
        Field acc = Field::one();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            prefix[i] = acc;
            if (!pts[i].is_identity()) acc = acc * pts[i].z_;
        }
        Field inv = acc.inverse();
        for (std::size_t i = pts.size(); i-- > 0;) {
            if (pts[i].is_identity()) continue;
            Field zi = inv * prefix[i];
            inv = inv * pts[i].z_;
            Field zi2 = zi.square();
            pts[i].x_ = pts[i].x_ * zi2;
            pts[i].y_ = pts[i].y_ * zi2 * zi;
            pts[i].z_ = Field::one();
        }
    }
    JacobianPoint& operator+=(const JacobianPoint& o) { return *this = *this + o; }

    // Variable-base multiplication with a 4-bit fixed window.
    JacobianPoint mul(const U256& k) const
    {
        std::array<JacobianPoint, 16> table;
        table[0] = identity();
        table[1] = *this;
        for (std::size_t i = 2; i < 16; ++i) table[i] = table[i - 1] + *this;
        JacobianPoint acc;
        const std::size_t nbits = k.bit_length();
        const std::size_t windows = (nbits + 3) / 4;
        for (std::size_t w = windows; w-- > 0;) {
            acc = acc.dbl().dbl().dbl().dbl();
            unsigned idx = 0;
            for (unsigned b = 0; b < 4; ++b) idx |= static_cast<unsigned>(k.bit(w * 4 + b)) << b;
            if (idx != 0) acc += table[idx];
        }
        return acc;
    }

    const Field& x() const { return x_; }
    const Field& y() const { return y_; }
    const Field& z() const { return z_; }

private:
    // madd-2007-bl, requires o.z_ == 1.
    JacobianPoint add_mixed(const JacobianPoint& o) const
    {
        Field z1z1 = z_.square();
        Field u2 = o.x_ * z1z1;
        Field s2 = o.y_ * z_ * z1z1;
        if (x_ == u2) {
            if (y_ == s2) return dbl();
            return identity();
        }
        Field h = u2 - x_;
        Field hh = h.square();
        Field i = hh.dbl().dbl();
        Field j = h * i;
        Field rr = (s2 - y_).dbl();
        Field v = x_ * i;
        JacobianPoint r;
        r.x_ = rr.square() - j - v.dbl();
        r.y_ = rr * (v - r.x_) - (y_ * j).dbl();
        r.z_ = (z_ + h).square() - z1z1 - hh;
        return r;
    }

    Field x_, y_, z_;
};

// Precomputed multiples base * (d << 4w) for each 4-bit window w.
template <class Point>
class FixedBaseTable {
public:
    explicit FixedBaseTable(const Point& base)
    {
        Point window_base = base;
        for (std::size_t w = 0; w < 64; ++w) {
            auto& row = rows_[w];
            row[0] = Point::identity();
            for (std::size_t d = 1; d < 16; ++d) row[d] = row[d - 1] + window_base;
            window_base = row[15] + window_base;
            Point::normalize_batch(std::span<Point>(row.data() + 1, 15));
        }
    }

    Point mul(const U256& k) const
    {
        Point acc = Point::identity();
        for (std::size_t w = 0; w < 64; ++w) {
            unsigned idx = 0;
            for (unsigned b = 0; b < 4; ++b) idx |= static_cast<unsigned>(k.bit(w * 4 + b)) << b;
            if (idx != 0) acc += rows_[w][idx];
        }
        return acc;
    }

private:
    std::array<std::array<Point, 16>, 64> rows_;
};

}  // namespace nomsig::algebra

#endif  // NOMSIG_ALGEBRA_CURVE_HPP_

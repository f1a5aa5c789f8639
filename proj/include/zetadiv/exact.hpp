#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

#include "zetadiv/errors.hpp"

namespace zetadiv {

/// Arbitrary-precision rational, always kept reduced with a positive
/// denominator. Canonical zero is 0/1.
class ExactRational {
public:
    ExactRational() : q_(0) {}
    ExactRational(long n) : q_(n) {}  // NOLINT: implicit from integers is intended
    ExactRational(long num, long den) {
        if (den == 0) throw DomainError("ExactRational: zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit ExactRational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
    explicit ExactRational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw DomainError("ExactRational: zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }

    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return q_ == 0; }
    int sign() const { return sgn(q_); }

    double to_double() const { return q_.get_d(); }
    std::string str() const { return q_.get_str(); }

    ExactRational operator-() const { return ExactRational(mpq_class(-q_)); }

    friend ExactRational operator+(const ExactRational& a, const ExactRational& b) {
        return ExactRational(mpq_class(a.q_ + b.q_));
    }
    friend ExactRational operator-(const ExactRational& a, const ExactRational& b) {
        return ExactRational(mpq_class(a.q_ - b.q_));
    }
    friend ExactRational operator*(const ExactRational& a, const ExactRational& b) {
        return ExactRational(mpq_class(a.q_ * b.q_));
    }
    friend ExactRational operator/(const ExactRational& a, const ExactRational& b) {
        if (b.is_zero()) throw DomainError("ExactRational: division by zero");
        return ExactRational(mpq_class(a.q_ / b.q_));
    }
    ExactRational& operator+=(const ExactRational& b) { q_ += b.q_; return *this; }
    ExactRational& operator-=(const ExactRational& b) { q_ -= b.q_; return *this; }
    ExactRational& operator*=(const ExactRational& b) { q_ *= b.q_; return *this; }

    friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const ExactRational& a, const ExactRational& b) { return a.q_ != b.q_; }
    friend bool operator<(const ExactRational& a, const ExactRational& b) { return a.q_ < b.q_; }
    friend bool operator>(const ExactRational& a, const ExactRational& b) { return a.q_ > b.q_; }

    ExactRational pow(unsigned k) const {
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), q_.get_num().get_mpz_t(), k);
        mpz_pow_ui(den.get_mpz_t(), q_.get_den().get_mpz_t(), k);
        return ExactRational(num, den);
    }

private:
    mpq_class q_;
};

/// Exact value of the form coefficient * pi^pi_exponent.
/// pi_exponent == 0 denotes a plain rational.
class PiPowerValue {
public:
    PiPowerValue(ExactRational coeff, unsigned pi_exp)
        : coeff_(std::move(coeff)), pi_exp_(pi_exp) {}

    const ExactRational& coefficient() const { return coeff_; }
    unsigned pi_exponent() const { return pi_exp_; }

    double to_double() const;

    /// Renders e.g. "pi^2/6", "691*pi^12/638512875", "-3/4", "pi".
    std::string str() const;

    friend PiPowerValue operator*(const PiPowerValue& a, const PiPowerValue& b) {
        return PiPowerValue(a.coeff_ * b.coeff_, a.pi_exp_ + b.pi_exp_);
    }
    friend PiPowerValue operator/(const PiPowerValue& a, const PiPowerValue& b) {
        if (a.pi_exp_ < b.pi_exp_)
            throw DomainError("PiPowerValue: quotient would have negative pi exponent");
        return PiPowerValue(a.coeff_ / b.coeff_, a.pi_exp_ - b.pi_exp_);
    }
    PiPowerValue pow(unsigned k) const { return PiPowerValue(coeff_.pow(k), pi_exp_ * k); }

    friend bool operator==(const PiPowerValue& a, const PiPowerValue& b) {
        return a.pi_exp_ == b.pi_exp_ && a.coeff_ == b.coeff_;
    }

private:
    ExactRational coeff_;
    unsigned pi_exp_;
};

}  // namespace zetadiv

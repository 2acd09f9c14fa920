#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace partigrowth {

/// A positive quantity (usually a probability) carried as its natural log.
///
/// Products and ratios are exact in log space; sums use log-sum-exp. The
/// zero state is explicit so that log(0) never appears as a value.
class LogProb {
public:
    constexpr LogProb() = default;

    static LogProb from_log(double log_value) {
        if (std::isnan(log_value)) throw std::domain_error("LogProb: NaN log value");
        if (log_value == -std::numeric_limits<double>::infinity()) return zero();
        LogProb out;
        out.log_ = log_value;
        out.zero_ = false;
        return out;
    }

    static LogProb from_value(double value) {
        if (!(value >= 0.0)) throw std::domain_error("LogProb: negative or NaN value");
        return value == 0.0 ? zero() : from_log(std::log(value));
    }

    static constexpr LogProb zero() { return LogProb{}; }
    static LogProb one() { return from_log(0.0); }

    bool is_zero() const noexcept { return zero_; }
    double log_value() const noexcept { return zero_ ? -std::numeric_limits<double>::infinity() : log_; }
    double value() const noexcept { return zero_ ? 0.0 : std::exp(log_); }

    friend LogProb operator*(LogProb a, LogProb b) {
        if (a.zero_ || b.zero_) return zero();
        return from_log(a.log_ + b.log_);
    }

    friend LogProb operator/(LogProb a, LogProb b) {
        if (b.zero_) throw std::domain_error("LogProb: division by zero");
        if (a.zero_) return zero();
        return from_log(a.log_ - b.log_);
    }

    friend LogProb operator+(LogProb a, LogProb b) {
        if (a.zero_) return b;
        if (b.zero_) return a;
        const double hi = a.log_ > b.log_ ? a.log_ : b.log_;
        const double lo = a.log_ > b.log_ ? b.log_ : a.log_;
        return from_log(hi + std::log1p(std::exp(lo - hi)));
    }

    LogProb& operator*=(LogProb other) { return *this = *this * other; }
    LogProb& operator+=(LogProb other) { return *this = *this + other; }

    friend bool operator<(LogProb a, LogProb b) { return a.log_value() < b.log_value(); }

private:
    double log_ = 0.0;
    bool zero_ = true;
};

}  // namespace partigrowth

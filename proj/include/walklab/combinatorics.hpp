#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace walklab {

/// Exact for arguments small enough to fit a double (n <= 60 or so);
/// claims never leave that range.
inline double binom(long n, long k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (long i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return std::round(r);
}

/// n! / prod h_i!, via lgamma; h must sum to n.
inline double multinomial(int n, const std::vector<int>& h) {
    double lg = std::lgamma(n + 1.0);
    for (int x : h) lg -= std::lgamma(x + 1.0);
    return std::exp(lg);
}

/// multinomial(n;h) * prod_l p_l^{h_l}, computed in log space.
inline double multinomial_weight(int n, const std::vector<int>& h,
                                 const std::vector<double>& p) {
    double lg = std::lgamma(n + 1.0);
    for (std::size_t l = 0; l < h.size(); ++l) {
        lg -= std::lgamma(h[l] + 1.0);
        if (h[l] > 0) {
            if (p[l] <= 0.0) return 0.0;
            lg += h[l] * std::log(p[l]);
        }
    }
    return std::exp(lg);
}

/// Ranks histograms (compositions of n into q nonnegative parts) in
/// lexicographic order of (h_0, ..., h_{q-1}).
class HistogramIndexer {
public:
    HistogramIndexer(int n, int q) : n_(n), q_(q) {
        if (q < 1) throw std::invalid_argument("HistogramIndexer: q >= 1");
        size_ = static_cast<long>(binom(n + q - 1, q - 1));
    }

    int total() const { return n_; }
    int parts() const { return q_; }
    long size() const { return size_; }

    long rank(const std::vector<int>& h) const {
        long r = 0;
        int rem = n_;
        for (int i = 0; i + 1 < q_; ++i) {
            for (int t = 0; t < h[i]; ++t)
                r += static_cast<long>(binom(rem - t + q_ - i - 2, q_ - i - 2));
            rem -= h[i];
        }
        return r;
    }

    std::vector<int> unrank(long r) const {
        std::vector<int> h(q_, 0);
        int rem = n_;
        for (int i = 0; i + 1 < q_; ++i) {
            for (int t = 0;; ++t) {
                long block = static_cast<long>(binom(rem - t + q_ - i - 2, q_ - i - 2));
                if (r < block) {
                    h[i] = t;
                    rem -= t;
                    break;
                }
                r -= block;
            }
        }
        h[q_ - 1] = rem;
        return h;
    }

    bool first(std::vector<int>& h) const {
        h.assign(q_, 0);
        h[q_ - 1] = n_;
        return true;
    }

    /// Advance in lexicographic order; false after the last histogram.
    bool next(std::vector<int>& h) const {
        // increment the rightmost position that still has mass after it
        for (int i = q_ - 2; i >= 0; --i) {
            int tail = 0;
            for (int j = i + 1; j < q_; ++j) tail += h[j];
            if (tail > 0) {
                ++h[i];
                for (int j = i + 1; j < q_; ++j) h[j] = 0;
                h[q_ - 1] = tail - 1;
                return true;
            }
        }
        return false;
    }

private:
    int n_, q_;
    long size_;
};

/// All subsets of {1..n} of size k in lexicographic order.
class SubsetIterator {
public:
    SubsetIterator(int n, int k) : n_(n), k_(k) {}
    bool first(std::vector<int>& s) const {
        if (k_ > n_) return false;
        s.resize(k_);
        for (int i = 0; i < k_; ++i) s[i] = i + 1;
        return true;
    }
    bool next(std::vector<int>& s) const {
        for (int i = k_ - 1; i >= 0; --i) {
            if (s[i] < n_ - (k_ - 1 - i)) {
                ++s[i];
                for (int j = i + 1; j < k_; ++j) s[j] = s[j - 1] + 1;
                return true;
            }
        }
        return false;
    }

private:
    int n_, k_;
};

} // namespace walklab

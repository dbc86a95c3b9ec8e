#include "ramlocus/ring.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <utility>
#include <vector>

namespace ramlocus {

namespace {

using u128 = unsigned __int128;

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((u128)a * b % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1u) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1u;
    }
    return r;
}

// Extended gcd on the machine path; coefficients tracked in 128-bit.
uint64_t inv_mod_u64(uint64_t a, uint64_t m) {
    __int128 t = 0, new_t = 1;
    uint64_t r = m, new_r = a;
    while (new_r != 0) {
        uint64_t q = r / new_r;
        __int128 tmp_t = t - (__int128)q * new_t;
        t = new_t;
        new_t = tmp_t;
        uint64_t tmp_r = r - q * new_r;
        r = new_r;
        new_r = tmp_r;
    }
    // r == gcd; caller guarantees r == 1
    if (t < 0) t += m;
    return static_cast<uint64_t>(t);
}

Nat inv_mod_nat(const Nat& a, const Nat& m) {
    Nat t = 0, new_t = 1;
    Nat r = m, new_r = a;
    while (new_r != 0) {
        Nat q = r / new_r;
        Nat tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += m;
    return t;
}

}  // namespace

bool is_prime(uint64_t x) {
    if (x < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (x == q) return true;
        if (x % q == 0) return false;
    }
    uint64_t d = x - 1;
    unsigned s = 0;
    while ((d & 1u) == 0) {
        d >>= 1u;
        ++s;
    }
    // This witness set is deterministic for every 64-bit integer.
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t y = powmod_u64(a, d, x);
        if (y == 1 || y == x - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            y = mulmod_u64(y, y, x);
            if (y == x - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Ring::Ring(uint64_t p, unsigned n) : p_(p), n_(n), modulus_(pow_nat(p, n)) {
    small_ = modulus_ <= Nat(UINT64_MAX);
    mod64_ = small_ ? modulus_.convert_to<uint64_t>() : 0;
}

const Ring& ring_of(uint64_t p, unsigned n) {
    if (n < 1) throw BadParam("ring_of: precision n must be >= 1");
    if (!is_prime(p)) throw BadParam("ring_of: p = " + std::to_string(p) + " is not prime");
    static std::mutex mu;
    static std::map<std::pair<uint64_t, unsigned>, std::unique_ptr<Ring>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, n}];
    if (!slot) slot.reset(new Ring(p, n));
    return *slot;
}

Nat Ring::unit_group_order() const {
    return pow_nat(p_, n_ - 1) * (p_ - 1);
}

Residue Ring::residue(const Nat& value) const {
    Nat v = value % modulus_;
    if (v < 0) v += modulus_;
    return Residue(*this, v);
}

Residue Ring::residue(int64_t value) const {
    return residue(Nat(value));
}

Residue Ring::zero() const { return Residue(*this, uint64_t{0}); }
Residue Ring::one() const { return Residue(*this, uint64_t{1}); }

std::string Ring::str() const {
    std::ostringstream os;
    os << "Z/" << p_;
    if (n_ > 1) os << "^" << n_;
    return os.str();
}

Residue::Residue(const Ring& ring, const Nat& value) : ring_(&ring), sv_(0) {
    Nat v = value % ring.modulus();
    if (v < 0) v += ring.modulus();
    if (ring.small())
        sv_ = v.convert_to<uint64_t>();
    else
        bv_ = std::move(v);
}

Residue::Residue(const Ring& ring, uint64_t reduced_value) : ring_(&ring), sv_(reduced_value) {
    if (!ring.small()) bv_ = reduced_value;
}

Nat Residue::value() const {
    return ring_->small() ? Nat(sv_) : bv_;
}

uint64_t Residue::value_u64() const {
    return sv_;
}

bool Residue::is_zero() const {
    return ring_->small() ? sv_ == 0 : bv_ == 0;
}

bool Residue::is_one() const {
    return ring_->small() ? sv_ == 1 : bv_ == 1;
}

bool Residue::is_unit() const {
    return ring_->small() ? sv_ % ring_->p() != 0 : bv_ % ring_->p() != 0;
}

void Residue::check_same_ring(const Residue& rhs) const {
    if (*ring_ != *rhs.ring_)
        throw RingMismatch("residue arithmetic across rings " + ring_->str() + " and " +
                           rhs.ring_->str());
}

Residue Residue::operator+(const Residue& rhs) const {
    check_same_ring(rhs);
    if (ring_->small()) {
        uint64_t m = ring_->modulus_u64();
        uint64_t a = sv_, b = rhs.sv_;
        uint64_t s = a + b;  // cannot wrap only if m <= 2^63; go through 128-bit to be safe
        if (s < a || s >= m) s = static_cast<uint64_t>(((u128)a + b) % m);
        return Residue(*ring_, s);
    }
    Nat s = bv_ + rhs.bv_;
    if (s >= ring_->modulus()) s -= ring_->modulus();
    return Residue(*ring_, s);
}

Residue Residue::operator-(const Residue& rhs) const {
    check_same_ring(rhs);
    if (ring_->small()) {
        uint64_t m = ring_->modulus_u64();
        uint64_t d = sv_ >= rhs.sv_ ? sv_ - rhs.sv_ : m - (rhs.sv_ - sv_);
        return Residue(*ring_, d);
    }
    Nat d = bv_ - rhs.bv_;
    if (d < 0) d += ring_->modulus();
    return Residue(*ring_, d);
}

Residue Residue::operator*(const Residue& rhs) const {
    check_same_ring(rhs);
    if (ring_->small())
        return Residue(*ring_, mulmod_u64(sv_, rhs.sv_, ring_->modulus_u64()));
    return Residue(*ring_, Nat((bv_ * rhs.bv_) % ring_->modulus()));
}

Residue Residue::operator-() const {
    if (ring_->small())
        return Residue(*ring_, sv_ == 0 ? 0 : ring_->modulus_u64() - sv_);
    return Residue(*ring_, bv_ == 0 ? Nat(0) : Nat(ring_->modulus() - bv_));
}

Residue Residue::inv() const {
    if (!is_unit())
        throw NonUnit("inv: " + str() + " is divisible by p = " + std::to_string(ring_->p()));
    if (ring_->small())
        return Residue(*ring_, inv_mod_u64(sv_, ring_->modulus_u64()));
    return Residue(*ring_, inv_mod_nat(bv_, ring_->modulus()));
}

Residue Residue::pow(uint64_t e) const {
    Residue r = ring_->one();
    Residue b = *this;
    while (e) {
        if (e & 1u) r = r * b;
        b = b * b;
        e >>= 1u;
    }
    return r;
}

Residue Residue::pow(const Nat& e) const {
    if (e < 0) return inv().pow(Nat(-e));
    Residue r = ring_->one();
    Residue b = *this;
    Nat k = e;
    while (k != 0) {
        if (boost::multiprecision::bit_test(k, 0)) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

bool Residue::operator==(const Residue& rhs) const {
    if (*ring_ != *rhs.ring_) return false;
    return ring_->small() ? sv_ == rhs.sv_ : bv_ == rhs.bv_;
}

Residue Residue::reduce_to(const Ring& target) const {
    if (target.p() != ring_->p() || target.n() > ring_->n())
        throw RingMismatch("reduce_to: " + target.str() + " is not a quotient of " + ring_->str());
    return target.residue(value());
}

std::string Residue::str() const {
    return value().str() + " (mod " + ring_->modulus().str() + ")";
}

unsigned valuation(const Residue& a) {
    const Ring& R = a.ring();
    if (a.is_zero()) return R.n();
    unsigned v = 0;
    if (R.small()) {
        uint64_t x = a.value_u64();
        while (x % R.p() == 0) {
            x /= R.p();
            ++v;
        }
    } else {
        Nat x = a.value();
        while (x % R.p() == 0) {
            x /= R.p();
            ++v;
        }
    }
    return v;
}

Nat unit_order(const Residue& a) {
    if (!a.is_unit()) throw NonUnit("unit_order: " + a.str() + " is not a unit");
    const Ring& R = a.ring();
    // Group order p^(n-1)(p-1); its prime factors are p and the factors of p-1.
    std::vector<uint64_t> factors;
    if (R.n() > 1) factors.push_back(R.p());
    uint64_t rest = R.p() - 1;
    for (uint64_t f = 2; f * f <= rest; ++f) {
        if (rest % f == 0) {
            factors.push_back(f);
            while (rest % f == 0) rest /= f;
        }
    }
    if (rest > 1) factors.push_back(rest);

    Nat order = R.unit_group_order();
    for (uint64_t f : factors) {
        while (order % f == 0 && a.pow(Nat(order / f)).is_one()) order /= f;
    }
    return order;
}

}  // namespace ramlocus

#include "edsp/verify.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "edsp/apblocks.hpp"

namespace edsp {

std::uint64_t VerifyReport::total_checks() const {
    std::uint64_t n = 0;
    for (const auto& [name, count] : checks)
        n += count;
    return n;
}

std::size_t VerifyReport::violations_of(const std::string& name) const {
    std::size_t n = 0;
    for (const auto& v : violations)
        n += v.identity == name;
    return n;
}

namespace {

class Suite {
  public:
    Suite(const EdsSequence& seq, const PrimeTable& table, const VerifyOptions& opt)
        : seq_(seq), table_(table), opt_(opt) {}

    VerifyReport run();

  private:
    void expect(const char* name, bool ok, const std::string& detail) {
        ++report_.checks[name];
        if (!ok)
            report_.violations.push_back({name, detail});
    }
    const Integer& b(Index n) const { return values_.at(n); }
    std::string bad_note(std::uint64_t p) const {
        return seq_.good_reduction(p) ? "" : " [p divides the discriminant]";
    }

    void terms();
    void gcd_identities();
    void prime_identities();
    void blocks();
    void prime_counting();

    const EdsSequence& seq_;
    const PrimeTable& table_;
    const VerifyOptions& opt_;
    std::vector<Integer> values_;
    VerifyReport report_;
};

void Suite::terms() {
    values_.assign(opt_.max_n + 1, Integer(0));
    for (Index n = 1; n <= opt_.max_n; ++n) {
        values_[n] = seq_.b(n);
        const EdsTerm& t = seq_.term(n);  // make_term already checks the denominators
        const Integer full_b = t.b * seq_.raw_b1();
        Integer g;
        Integer ac = t.a * t.c;
        mpz_gcd(g.get_mpz_t(), ac.get_mpz_t(), full_b.get_mpz_t());
        expect(identity::denominator_shape, g == 1 && t.b > 0,
               "gcd(A_n C_n, B_n) != 1 at n = " + std::to_string(n));
        expect(identity::cache_consistency, t.b == values_[n],
               "B_" + std::to_string(n) + " = " + values_[n].get_str() + " but recomputation gives " +
                   t.b.get_str());
    }
}

void Suite::gcd_identities() {
    for (Index m = 1; m <= opt_.max_n; ++m) {
        for (Index n = m; n <= opt_.max_n; ++n) {
            Integer g;
            mpz_gcd(g.get_mpz_t(), b(m).get_mpz_t(), b(n).get_mpz_t());
            const Index h = std::gcd(m, n);
            expect(identity::strong_divisibility, g == b(h),
                   "gcd(B_" + std::to_string(m) + ", B_" + std::to_string(n) + ") = " + g.get_str() +
                       " but B_" + std::to_string(h) + " = " + b(h).get_str());
            if (n % m != 0)
                continue;
            const bool divides = mpz_divisible_p(b(n).get_mpz_t(), b(m).get_mpz_t()) != 0;
            expect(identity::divisibility, divides,
                   "B_" + std::to_string(m) + " does not divide B_" + std::to_string(n));
            if (!divides)
                continue;
            Integer quotient = b(n) / b(m);
            mpz_gcd(g.get_mpz_t(), b(m).get_mpz_t(), quotient.get_mpz_t());
            expect(identity::quotient_gcd, g.fits_ulong_p() && (n / m) % g.get_ui() == 0,
                   "gcd(B_" + std::to_string(m) + ", B_" + std::to_string(n) + "/B_" + std::to_string(m) +
                       ") = " + g.get_str() + " does not divide " + std::to_string(n / m));
        }
    }
}

void Suite::prime_identities() {
    for (std::uint64_t p : table_.primes()) {
        if (p > opt_.max_p)
            break;
        const Index window = hasse_window(p);
        Index rank = 0;
        for (Index n = 1; n <= std::max<Index>(window, opt_.max_n) && rank == 0; ++n)
            if (mpz_divisible_ui_p(seq_.b(n).get_mpz_t(), p))
                rank = n;
        std::ostringstream os;
        if (rank == 0)
            os << "no B_n with n <= " << std::max<Index>(window, opt_.max_n) << " is divisible by " << p;
        else
            os << "r_" << p << " = " << rank << " exceeds p + 1 + 2 sqrt(p) ~ "
               << static_cast<double>(p) + 1 + 2 * std::sqrt(static_cast<double>(p));
        expect(identity::rank_bound, rank != 0 && rank <= window, os.str() + bad_note(p));
        if (rank == 0 || rank > opt_.max_n)
            continue;
        const unsigned base = valuation(p, b(rank));
        for (Index n = 1; n <= opt_.max_n; ++n) {
            if (!mpz_divisible_ui_p(b(n).get_mpz_t(), p))
                continue;
            const unsigned direct = valuation(p, b(n));
            const bool aligned = n % rank == 0;
            const unsigned formula = aligned ? valuation(p, n / rank) + base : 0;
            expect(identity::valuation_formula, aligned && direct == formula,
                   "p = " + std::to_string(p) + ", n = " + std::to_string(n) + ": nu_p(B_n) = " +
                       std::to_string(direct) + ", formula gives " +
                       (aligned ? std::to_string(formula) : "r_p does not divide n") + bad_note(p));
        }
    }
}

void Suite::blocks() {
    const Index top = opt_.max_n;
    for (Index d = 1; d < top; ++d) {
        for (Index m = 1; m + d <= top; ++m) {
            if (std::gcd(m, d) != 1)
                continue;
            for (Index k = 2; m + (k - 1) * d <= top; ++k) {
                for (Index i = 0; i < k; ++i) {
                    const TermSplit s = split_term(table_, m, d, k, i);
                    if (s.x == 1)
                        continue;
                    const Index n = m + i * d;
                    bool coprime = true;
                    Integer g;
                    for (Index j = 0; j < k && coprime; ++j) {
                        if (j == i)
                            continue;
                        mpz_gcd(g.get_mpz_t(), b(s.x).get_mpz_t(), b(m + j * d).get_mpz_t());
                        coprime = g == 1;
                    }
                    std::ostringstream where;
                    where << "(m, d, k, i) = (" << m << ", " << d << ", " << k << ", " << i << "), x = " << s.x;
                    expect(identity::rough_part_coprime, coprime, where.str());
                    const bool divides = mpz_divisible_p(b(n).get_mpz_t(), b(s.x).get_mpz_t()) != 0;
                    bool ok = divides;
                    if (divides) {
                        Integer quotient = b(n) / b(s.x);
                        mpz_gcd(g.get_mpz_t(), b(s.x).get_mpz_t(), quotient.get_mpz_t());
                        ok = g.fits_ulong_p() && s.a % g.get_ui() == 0;
                    }
                    expect(identity::rough_part_quotient, ok, where.str() + ", a = " + std::to_string(s.a));
                }
            }
        }
    }
}

void Suite::prime_counting() {
    if (opt_.rs_max < 17)
        return;
    for (std::uint64_t x = 17; x <= opt_.rs_max; ++x)
        expect(identity::rosser_schoenfeld, check_rosser_schoenfeld(table_, static_cast<double>(x)),
               "x = " + std::to_string(x));
}

VerifyReport Suite::run() {
    if (opt_.max_n < 2)
        report_.warnings.push_back("max_n < 2: sequence identities hold vacuously");
    terms();
    gcd_identities();
    if (opt_.max_n >= 2)
        prime_identities();
    if (opt_.lemma2)
        blocks();
    prime_counting();
    return std::move(report_);
}

}  // namespace

VerifyReport run_property_suite(const EdsSequence& seq, const PrimeTable& table,
                                const VerifyOptions& options) {
    return Suite(seq, table, options).run();
}

}  // namespace edsp

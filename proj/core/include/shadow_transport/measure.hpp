#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace shadow_transport {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Atom {
    double x = 0.0;
    double w = 0.0;

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite atomic positive measure on the real line.
///
/// Atoms are kept sorted by strictly increasing position with strictly
/// positive weights. Construction from raw atoms sorts, merges positions that
/// agree within the position tolerance and drops negligible weights.
class DiscreteMeasure {
public:
    DiscreteMeasure() = default;

    /// Throws NonFiniteInput or NegativeWeight.
    explicit DiscreteMeasure(std::vector<Atom> raw);

    /// As above, but atoms with weight <= drop_below are discarded instead of
    /// using the default threshold (mass tolerance times total mass).
    DiscreteMeasure(std::vector<Atom> raw, double drop_below);

    static DiscreteMeasure point(double x, double w = 1.0);

    std::span<const Atom> atoms() const noexcept { return atoms_; }
    std::size_t size() const noexcept { return atoms_.size(); }
    bool empty() const noexcept { return atoms_.empty(); }
    const Atom& operator[](std::size_t i) const { return atoms_[i]; }

    double mass() const noexcept { return mass_; }
    double mean() const noexcept { return first_moment_; }  // integral of x, not normalised

    double min_position() const;
    double max_position() const;

    /// Weight of the atom at x (position tolerance applies), 0 if none.
    double weight_at(double x) const;

    std::vector<double> positions() const;

    DiscreteMeasure scaled(double factor) const;

    friend bool operator==(const DiscreteMeasure&, const DiscreteMeasure&) = default;

private:
    void normalise(std::vector<Atom> raw, double drop_below, bool use_default_drop);

    std::vector<Atom> atoms_;
    double mass_ = 0.0;
    double first_moment_ = 0.0;
};

inline DiscreteMeasure make_measure(std::vector<Atom> raw) { return DiscreteMeasure(std::move(raw)); }

/// (total mass, first moment).
std::pair<double, double> mass_and_mean(const DiscreteMeasure& m);

/// Right-continuous cumulative mass F(x) = m((-inf, x]).
double cdf(const DiscreteMeasure& m, double x);

enum class QuantileSide { Left, Right };

/// Left (G^-) or right (G^+) quantile on [0, mass]. G^-(0) = -inf and
/// G^+(mass) = +inf. Throws OutOfRange outside [0, mass].
double quantile(const DiscreteMeasure& m, double u, QuantileSide side);

/// Exact Wasserstein-1 distance between equal-mass measures. Throws MassMismatch.
double wasserstein1(const DiscreteMeasure& a, const DiscreteMeasure& b);

enum class UpDownMode { Up, Down };

/// Push-forward of Lebesgue measure on [0, mass] under the pointwise max (Up)
/// or min (Down) of the two quantile functions. Throws MassMismatch.
DiscreteMeasure up_down(const DiscreteMeasure& a, const DiscreteMeasure& b, UpDownMode mode);

/// Atoms inside the interval between lo and hi (either may be infinite).
DiscreteMeasure restrict(const DiscreteMeasure& m, double lo, double hi, bool include_lo, bool include_hi);

DiscreteMeasure operator+(const DiscreteMeasure& a, const DiscreteMeasure& b);

/// a - b for b <= a atom-wise. Residues below the mass tolerance of a are
/// clamped to zero; a genuinely negative result throws OrderViolation.
DiscreteMeasure difference(const DiscreteMeasure& a, const DiscreteMeasure& b);

/// Largest atom-wise deviation |a(x) - b(x)| over the union of supports.
double max_atom_gap(const DiscreteMeasure& a, const DiscreteMeasure& b);

}  // namespace shadow_transport

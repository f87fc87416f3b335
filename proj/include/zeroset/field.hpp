#ifndef ZEROSET_FIELD_HPP
#define ZEROSET_FIELD_HPP

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <memory>
#include <utility>

#include "zeroset/errors.hpp"
#include "zeroset/grid.hpp"

namespace zeroset {

struct FieldSource;

/// Samples of the weighted function e^{-|z|^2/2} F(z) on a GridSpec.
///
/// values()(k, l) is the sample at grid.point_at(k, l), i.e. at lattice point
/// (k - h, l - h) with h = grid.half_steps(). When a FieldSource is attached the
/// same realization can be re-evaluated off the grid.
template <typename Scalar = double>
class WeightedField {
 public:
  using ComplexT = std::complex<Scalar>;
  using Values = Eigen::Array<ComplexT, Eigen::Dynamic, Eigen::Dynamic>;
  using Magnitudes = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  WeightedField() = default;

  WeightedField(GridSpec grid, Values values, std::shared_ptr<const FieldSource> source = nullptr)
      : grid_(std::move(grid)), values_(std::move(values)), source_(std::move(source)) {
    if (values_.rows() != grid_.size() || values_.cols() != grid_.size())
      throw ConfigError("field dimensions do not match the grid");
  }

  const GridSpec& grid() const { return grid_; }
  const Values& values() const { return values_; }
  const FieldSource* source() const { return source_.get(); }
  const std::shared_ptr<const FieldSource>& shared_source() const { return source_; }

  ComplexT at(LatticePoint p) const { return values_(grid_.row_of(p), grid_.col_of(p)); }
  Scalar magnitude(LatticePoint p) const { return std::abs(at(p)); }

  /// |values| as an array with the same layout.
  Magnitudes magnitudes() const { return values_.abs(); }

  /// c * field; the source is dropped because it no longer describes the values.
  WeightedField scaled(ComplexT c) const { return WeightedField(grid_, values_ * c); }

  template <typename Other>
  WeightedField<Other> cast() const {
    return WeightedField<Other>(grid_, values_.template cast<std::complex<Other>>(), source_);
  }

 private:
  GridSpec grid_;
  Values values_;
  std::shared_ptr<const FieldSource> source_;
};

/// Tabulates e^{-|z|^2/2} F(z) for an analytic F given as a callable.
template <typename Scalar = double, typename Function>
WeightedField<Scalar> tabulate(const GridSpec& grid, Function&& F) {
  const int n = grid.size();
  typename WeightedField<Scalar>::Values values(n, n);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k) {
      const Complex z = grid.point_at(k, l);
      const Complex v = std::exp(-0.5 * std::norm(z)) * Complex(F(z));
      values(k, l) = std::complex<Scalar>(v);
    }
  return WeightedField<Scalar>(grid, std::move(values));
}

/// Dyadic subsampling S(F)(lambda_{k,l}) = F(lambda_{2k, 2l}) with the corner
/// -L - iL fixed. Values are copied, never recomputed.
template <typename Scalar>
WeightedField<Scalar> subsample(const WeightedField<Scalar>& field) {
  const GridSpec coarse = coarsened(field.grid());
  const int n = coarse.size();
  using Values = typename WeightedField<Scalar>::Values;
  Values values = field.values()(Eigen::seqN(0, n, 2), Eigen::seqN(0, n, 2));
  return WeightedField<Scalar>(coarse, std::move(values), field.shared_source());
}

}  // namespace zeroset

#endif  // ZEROSET_FIELD_HPP

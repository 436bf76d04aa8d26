#pragma once

#include "qslice/adhm.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qslice {

/// ar_k : k -> k+1 (evaluates to A_k) or its reverse k+1 -> k (B_k).
struct Arrow {
  bool forward = true;
  int k = 1;

  int source() const noexcept { return forward ? k : k + 1; }
  int target() const noexcept { return forward ? k + 1 : k; }
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

/// Path in the doubled graph, stored in written order: arrows.front() is
/// applied last. An empty path sits at `start`.
class BPath {
 public:
  BPath() = default;
  explicit BPath(int vertex) : start_(vertex) {}
  /// Throws InvalidArgument if consecutive arrows do not compose.
  explicit BPath(std::vector<Arrow> written);

  int source() const noexcept { return start_; }
  int target() const noexcept { return arrows_.empty() ? start_ : arrows_.front().target(); }
  int degree() const noexcept { return static_cast<int>(arrows_.size()); }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  /// this after rhs (rhs applied first).
  BPath after(const BPath& rhs) const;

  friend auto operator<=>(const BPath&, const BPath&) = default;

 private:
  int start_ = 1;
  std::vector<Arrow> arrows_;
};

Matrix eval_bpath(const BPath& path, const ADHMData& z);

struct VertexTerm {
  int vertex = 1;
  int power = 0;
  friend auto operator<=>(const VertexTerm&, const VertexTerm&) = default;
};

/// [i_{m+1}^{r_{m+1}} alpha^(m) ... alpha^(1) i_1^{r_1}] in written order:
/// terms.front() is i_{m+1}, segments[k] joins terms[k+1] to terms[k].
/// Normal form: no empty segment between two terms (those merge by adding
/// powers, which does not change the evaluation).
class AdmissiblePath {
 public:
  AdmissiblePath() = default;
  AdmissiblePath(std::vector<VertexTerm> terms, std::vector<BPath> segments);
  static AdmissiblePath at(int vertex, int power = 0) { return AdmissiblePath({{vertex, power}}, {}); }

  int source() const noexcept { return terms_.back().vertex; }
  int target() const noexcept { return terms_.front().vertex; }
  int degree() const noexcept;
  const std::vector<VertexTerm>& terms() const noexcept { return terms_; }
  const std::vector<BPath>& segments() const noexcept { return segments_; }

  friend auto operator<=>(const AdmissiblePath&, const AdmissiblePath&) = default;

 private:
  std::vector<VertexTerm> terms_{{1, 0}};
  std::vector<BPath> segments_;
};

/// D_{source} -> D_{target}.
Matrix eval_admissible(const AdmissiblePath& beta, const ADHMData& z);
/// [beta] . [beta'] with the junction powers merged as r + r' + 1; nullopt
/// when the endpoints do not match.
std::optional<AdmissiblePath> concatenate(const AdmissiblePath& beta, const AdmissiblePath& beta_prime);

struct AdmissiblePolynomial {
  std::map<AdmissiblePath, Rational> terms;
  /// (source, target) when known; required to evaluate the zero polynomial.
  std::optional<std::pair<int, int>> type;

  static AdmissiblePolynomial of(const AdmissiblePath& p, const Rational& c = Rational(1));
  void add(const AdmissiblePath& p, const Rational& c);
  bool is_zero() const noexcept { return terms.empty(); }
};

AdmissiblePolynomial operator+(const AdmissiblePolynomial& f, const AdmissiblePolynomial& g);
AdmissiblePolynomial multiply(const AdmissiblePolynomial& f, const AdmissiblePolynomial& g);
Matrix eval_polynomial(const AdmissiblePolynomial& f, const ADHMData& z);

/// Evaluation of [alpha theta_i alpha'] with alpha starting and alpha' ending at i.
Matrix theta_residual(int i, const BPath& alpha, const BPath& alpha_prime, const ADHMData& z);

/// delta_{l->j} gamma_{i->l} as admissible paths, same order as the signature.
std::vector<AdmissiblePath> generators_P(int n);

/// All paths of degree <= max_degree that start (resp. end) at `vertex`.
std::vector<BPath> bpaths_from(int n, int vertex, int max_degree);
std::vector<BPath> bpaths_to(int n, int vertex, int max_degree);

/// Text form, e.g. "2 a1 1^1" for [2 ar_1 1^1]; see docs/paths.md.
AdmissiblePath parse_admissible(std::string_view text);
std::string to_string(const AdmissiblePath& p);

}  // namespace qslice

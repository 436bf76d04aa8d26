#include "qslice/paths.hpp"

#include "qslice/errors.hpp"

#include <cctype>
#include <sstream>

namespace qslice {

BPath::BPath(std::vector<Arrow> written) : arrows_(std::move(written)) {
  if (arrows_.empty()) throw Error(Errc::InvalidArgument, "empty arrow list needs an explicit vertex");
  for (std::size_t k = 0; k + 1 < arrows_.size(); ++k)
    if (arrows_[k].source() != arrows_[k + 1].target())
      throw Error(Errc::InvalidArgument, "arrows do not compose");
  start_ = arrows_.back().source();
}

BPath BPath::after(const BPath& rhs) const {
  if (source() != rhs.target()) throw Error(Errc::InvalidArgument, "paths do not compose");
  BPath r = rhs;
  r.arrows_.insert(r.arrows_.begin(), arrows_.begin(), arrows_.end());
  return r;
}

Matrix eval_bpath(const BPath& path, const ADHMData& z) {
  const int n = z.n();
  for (const auto& a : path.arrows())
    if (a.k < 1 || a.k > n - 2) throw Error(Errc::InvalidArgument, "arrow index out of range");
  if (path.source() < 1 || path.source() > n - 1) throw Error(Errc::InvalidArgument, "vertex out of range");
  Matrix m = Matrix::identity(static_cast<std::size_t>(z.dims.v_at(path.target())));
  for (const auto& a : path.arrows()) m = m * (a.forward ? z.a(a.k) : z.b(a.k));
  return m;
}

AdmissiblePath::AdmissiblePath(std::vector<VertexTerm> terms, std::vector<BPath> segments) {
  if (terms.empty() || segments.size() + 1 != terms.size())
    throw Error(Errc::InvalidArgument, "admissible path needs one more vertex term than segments");
  for (const auto& t : terms)
    if (t.power < 0) throw Error(Errc::InvalidArgument, "negative power");
  for (std::size_t k = 0; k < segments.size(); ++k)
    if (segments[k].target() != terms[k].vertex || segments[k].source() != terms[k + 1].vertex)
      throw Error(Errc::InvalidArgument, "segment endpoints do not match the vertex terms");
  terms_.clear();
  terms_.push_back(terms.front());
  for (std::size_t k = 0; k < segments.size(); ++k) {
    if (segments[k].degree() == 0) {
      terms_.back().power += terms[k + 1].power;
    } else {
      segments_.push_back(segments[k]);
      terms_.push_back(terms[k + 1]);
    }
  }
}

int AdmissiblePath::degree() const noexcept {
  int d = 2;
  for (const auto& t : terms_) d += t.power;
  for (const auto& s : segments_) d += s.degree();
  return d;
}

Matrix eval_admissible(const AdmissiblePath& beta, const ADHMData& z) {
  for (const auto& t : beta.terms())
    if (t.vertex < 1 || t.vertex > z.n() - 1) throw Error(Errc::InvalidArgument, "vertex out of range");
  const auto& terms = beta.terms();
  Matrix m = z.dl(terms.front().vertex);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const int i = terms[k].vertex;
    if (terms[k].power > 0) {
      const Matrix loop = z.g(i) * z.dl(i);
      for (int r = 0; r < terms[k].power; ++r) m = m * loop;
    }
    if (k < beta.segments().size()) m = m * eval_bpath(beta.segments()[k], z);
  }
  return m * z.g(terms.back().vertex);
}

std::optional<AdmissiblePath> concatenate(const AdmissiblePath& beta, const AdmissiblePath& beta_prime) {
  if (beta_prime.target() != beta.source()) return std::nullopt;
  std::vector<VertexTerm> terms(beta.terms().begin(), beta.terms().end() - 1);
  VertexTerm junction{beta.source(), beta.terms().back().power + beta_prime.terms().front().power + 1};
  terms.push_back(junction);
  terms.insert(terms.end(), beta_prime.terms().begin() + 1, beta_prime.terms().end());
  std::vector<BPath> segments(beta.segments());
  segments.insert(segments.end(), beta_prime.segments().begin(), beta_prime.segments().end());
  return AdmissiblePath(std::move(terms), std::move(segments));
}

AdmissiblePolynomial AdmissiblePolynomial::of(const AdmissiblePath& p, const Rational& c) {
  AdmissiblePolynomial f;
  f.type = std::make_pair(p.source(), p.target());
  f.add(p, c);
  return f;
}

void AdmissiblePolynomial::add(const AdmissiblePath& p, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

AdmissiblePolynomial operator+(const AdmissiblePolynomial& f, const AdmissiblePolynomial& g) {
  AdmissiblePolynomial r = f;
  if (!r.type) r.type = g.type;
  for (const auto& [p, c] : g.terms) r.add(p, c);
  return r;
}

AdmissiblePolynomial multiply(const AdmissiblePolynomial& f, const AdmissiblePolynomial& g) {
  AdmissiblePolynomial r;
  if (f.type && g.type) r.type = std::make_pair(g.type->first, f.type->second);
  for (const auto& [p, c] : f.terms)
    for (const auto& [q, e] : g.terms)
      if (auto pq = concatenate(p, q)) r.add(*pq, c * e);
  return r;
}

Matrix eval_polynomial(const AdmissiblePolynomial& f, const ADHMData& z) {
  std::optional<Matrix> acc;
  if (f.type) {
    acc = Matrix::zero(static_cast<std::size_t>(z.dims.d_at(f.type->second)),
                       static_cast<std::size_t>(z.dims.d_at(f.type->first)));
  }
  for (const auto& [p, c] : f.terms) {
    Matrix term = eval_admissible(p, z) * c;
    if (acc) *acc += term;
    else acc = std::move(term);
  }
  if (!acc) throw Error(Errc::InvalidArgument, "untyped zero polynomial has no shape");
  return *acc;
}

Matrix theta_residual(int i, const BPath& alpha, const BPath& alpha_prime, const ADHMData& z) {
  if (alpha.source() != i || alpha_prime.target() != i)
    throw Error(Errc::InvalidArgument, "sandwich endpoints must meet at vertex " + std::to_string(i));
  return eval_bpath(alpha, z) * adhm_defect(z, i) * eval_bpath(alpha_prime, z);
}

std::vector<AdmissiblePath> generators_P(int n) {
  std::vector<AdmissiblePath> out;
  for (const auto& [i, j, l] : signature_indices(n)) {
    // ar_{j-1} ... ar_l arbar_l ... arbar_{i-1}, written order.
    std::vector<Arrow> arrows;
    for (int k = j - 1; k >= l; --k) arrows.push_back({true, k});
    for (int k = l; k <= i - 1; ++k) arrows.push_back({false, k});
    BPath alpha = arrows.empty() ? BPath(i) : BPath(std::move(arrows));
    out.emplace_back(std::vector<VertexTerm>{{j, 0}, {i, 0}}, std::vector<BPath>{alpha});
  }
  return out;
}

namespace {

void extend_from(int n, const BPath& p, int remaining, std::vector<BPath>& out) {
  out.push_back(p);
  if (remaining == 0) return;
  const int t = p.target();
  if (t + 1 <= n - 1) extend_from(n, BPath({Arrow{true, t}}).after(p), remaining - 1, out);
  if (t - 1 >= 1) extend_from(n, BPath({Arrow{false, t - 1}}).after(p), remaining - 1, out);
}

void extend_to(int n, const BPath& p, int remaining, std::vector<BPath>& out) {
  out.push_back(p);
  if (remaining == 0) return;
  const int s = p.source();
  if (s - 1 >= 1) extend_to(n, p.after(BPath({Arrow{true, s - 1}})), remaining - 1, out);
  if (s + 1 <= n - 1) extend_to(n, p.after(BPath({Arrow{false, s}})), remaining - 1, out);
}

}  // namespace

std::vector<BPath> bpaths_from(int n, int vertex, int max_degree) {
  std::vector<BPath> out;
  extend_from(n, BPath(vertex), max_degree, out);
  return out;
}

std::vector<BPath> bpaths_to(int n, int vertex, int max_degree) {
  std::vector<BPath> out;
  extend_to(n, BPath(vertex), max_degree, out);
  return out;
}

AdmissiblePath parse_admissible(std::string_view text) {
  std::string s(text);
  for (char& c : s)
    if (c == '[' || c == ']' || c == ',') c = ' ';
  std::istringstream in(s);
  std::vector<VertexTerm> terms;
  std::vector<BPath> segments;
  std::vector<Arrow> pending;
  auto bad = [&](const std::string& why) { return Error(Errc::ParseError, why + " in path '" + std::string(text) + "'"); };
  auto parse_int = [&](const std::string& tok, std::size_t from, std::size_t to) {
    if (from >= to) throw bad("missing number");
    for (std::size_t k = from; k < to; ++k)
      if (!std::isdigit(static_cast<unsigned char>(tok[k]))) throw bad("bad number '" + tok + "'");
    return std::stoi(tok.substr(from, to - from));
  };
  for (std::string tok; in >> tok;) {
    if (tok[0] == 'a' || tok[0] == 'b') {
      if (terms.empty()) throw bad("path must start with a vertex");
      pending.push_back({tok[0] == 'a', parse_int(tok, 1, tok.size())});
      continue;
    }
    const auto caret = tok.find('^');
    VertexTerm t;
    t.vertex = parse_int(tok, 0, caret == std::string::npos ? tok.size() : caret);
    t.power = caret == std::string::npos ? 0 : parse_int(tok, caret + 1, tok.size());
    if (!terms.empty()) {
      try {
        segments.push_back(pending.empty() ? BPath(t.vertex) : BPath(pending));
      } catch (const Error&) {
        throw bad("arrows do not compose");
      }
    }
    pending.clear();
    terms.push_back(t);
  }
  if (terms.empty()) throw bad("empty path");
  if (!pending.empty()) throw bad("path must end with a vertex");
  try {
    return AdmissiblePath(std::move(terms), std::move(segments));
  } catch (const Error& e) {
    throw bad(e.what());
  }
}

std::string to_string(const AdmissiblePath& p) {
  std::string s;
  for (std::size_t k = 0; k < p.terms().size(); ++k) {
    const auto& t = p.terms()[k];
    if (k) s += ' ';
    s += std::to_string(t.vertex);
    if (t.power) s += "^" + std::to_string(t.power);
    if (k < p.segments().size())
      for (const auto& a : p.segments()[k].arrows()) s += std::string(" ") + (a.forward ? "a" : "b") + std::to_string(a.k);
  }
  return s;
}

}  // namespace qslice

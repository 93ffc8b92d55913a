#include "motint/laurent.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace motint {

namespace {

void drop_zeros(std::map<long, Integer>& c) {
  for (auto it = c.begin(); it != c.end();) it = it->second == 0 ? c.erase(it) : std::next(it);
}

std::string monomial(long k) {
  if (k == 0) return "1";
  if (k == 1) return "L";
  return "L^" + std::to_string(k);
}

} // namespace

TruncatedSeries TruncatedSeries::exact(std::map<long, Integer> coeffs) {
  TruncatedSeries s;
  drop_zeros(coeffs);
  s.c_ = std::move(coeffs);
  return s;
}

TruncatedSeries TruncatedSeries::truncated(std::map<long, Integer> coeffs, long precision) {
  TruncatedSeries s;
  drop_zeros(coeffs);
  s.c_ = std::move(coeffs);
  s.exact_ = false;
  s.prec_ = precision;
  s.c_.erase(s.c_.begin(), s.c_.lower_bound(-precision));
  return s;
}

Integer TruncatedSeries::coeff(long k) const {
  auto it = c_.find(k);
  return it == c_.end() ? Integer(0) : it->second;
}

std::optional<long> TruncatedSeries::top_degree() const {
  if (!c_.empty()) return c_.rbegin()->first;
  if (exact_) return std::nullopt;
  return -prec_ - 1;
}

Rational TruncatedSeries::eval(const Rational& q) const {
  Rational s = 0;
  for (const auto& [k, v] : c_) s += Rational(v) * rational_pow(q, k);
  return s;
}

TruncatedSeries TruncatedSeries::truncate(long n) const {
  long p = exact_ ? n : std::min(n, prec_);
  return truncated(c_, p);
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  std::map<long, Integer> c = a.c_;
  for (const auto& [k, v] : b.c_) c[k] += v;
  if (a.exact_ && b.exact_) return TruncatedSeries::exact(std::move(c));
  long p = std::numeric_limits<long>::max();
  if (!a.exact_) p = std::min(p, a.prec_);
  if (!b.exact_) p = std::min(p, b.prec_);
  return TruncatedSeries::truncated(std::move(c), p);
}

TruncatedSeries operator-(const TruncatedSeries& a) {
  TruncatedSeries out = a;
  for (auto& [k, v] : out.c_) v = -v;
  return out;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  std::map<long, Integer> c;
  for (const auto& [i, x] : a.c_)
    for (const auto& [j, y] : b.c_) c[i + j] += x * y;
  if (a.exact_ && b.exact_) return TruncatedSeries::exact(std::move(c));
  // The error term of one factor is multiplied by the leading term of the other.
  long p = std::numeric_limits<long>::max();
  auto ta = a.top_degree(), tb = b.top_degree();
  if (!a.exact_ && tb) p = std::min(p, a.prec_ - *tb);
  if (!b.exact_ && ta) p = std::min(p, b.prec_ - *ta);
  if (p == std::numeric_limits<long>::max()) return TruncatedSeries(); // inexact times exact zero
  return TruncatedSeries::truncated(std::move(c), p);
}

std::string TruncatedSeries::to_string() const {
  std::string out;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    const auto& [k, v] = *it;
    bool neg = v < 0;
    Integer mag = neg ? Integer(-v) : v;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (k == 0)
      out += mag.get_str();
    else if (mag == 1)
      out += monomial(k);
    else
      out += mag.get_str() + "*" + monomial(k);
  }
  if (exact_) return out.empty() ? "0" : out;
  std::string err = "O(" + monomial(-prec_ - 1) + ")";
  return out.empty() ? err : out + " + " + err;
}

Rational TailBound::at(const Rational& q) const {
  if (coefficient == 0) return 0;
  Rational r = Rational(coefficient) * rational_pow(q, exponent);
  Rational f = q / (q - 1);
  return r * rational_pow(f, static_cast<long>(poles));
}

std::string TailBound::to_string() const {
  std::ostringstream os;
  if (coefficient == 0) return "0";
  os << coefficient.get_str() << "*q^" << exponent;
  if (poles > 0) os << "*(q/(q-1))^" << poles;
  return os.str();
}

Expansion expand(const MotElem& a, long n) {
  if (n < 0) fail(ErrorKind::Value, "precision must be a natural number");
  MotElem c = a.canonical();
  if (c.is_zero()) return {TruncatedSeries(), TailBound{0, 0, 0}};

  // a = L^s * Pt(t) / prod (1 - t^i)^e with t = 1/L.
  const IntPoly& p = c.numerator();
  long deg = p.degree();
  long s = deg - static_cast<long>(c.l_power());
  unsigned poles = 0;
  for (const auto& [i, e] : c.factors()) {
    s -= static_cast<long>(i) * static_cast<long>(e);
    poles += e;
  }
  IntPoly pt = p.reversed(); // coefficient of t^j is p_{deg-j}
  long k_max = s + n;        // highest t-power that lands at exponent >= -n

  std::map<long, Integer> coeffs;
  if (k_max >= 0) {
    std::vector<Integer> b(static_cast<std::size_t>(k_max + 1), Integer(0));
    for (long j = 0; j <= std::min(k_max, pt.degree()); ++j) b[static_cast<std::size_t>(j)] = pt.coeff(static_cast<std::size_t>(j));
    for (const auto& [i, e] : c.factors())
      for (unsigned r = 0; r < e; ++r)
        for (long j = static_cast<long>(i); j <= k_max; ++j) b[static_cast<std::size_t>(j)] += b[static_cast<std::size_t>(j - static_cast<long>(i))];
    for (long j = 0; j <= k_max; ++j) coeffs[s - j] = b[static_cast<std::size_t>(j)];
  }

  TailBound tail;
  tail.poles = poles;
  long kp = std::max(k_max, -1L);
  tail.exponent = s - kp - 1;
  if (poles == 0) {
    tail.coefficient = kp < pt.degree() ? p.l1_norm() : Integer(0);
    if (tail.coefficient == 0) return {TruncatedSeries::exact(std::move(coeffs)), tail};
  } else {
    tail.coefficient = p.l1_norm() * binomial(kp + static_cast<long>(poles), static_cast<long>(poles) - 1);
  }
  return {TruncatedSeries::truncated(std::move(coeffs), n), tail};
}

std::string MonomialLimit::to_string() const {
  switch (kind) {
    case Kind::Zero: return "Zero";
    case Kind::Stable: return "Stable(" + std::to_string(exponent) + ")";
    case Kind::Divergent: return "Divergent";
  }
  return "?";
}

MonomialLimit classify_monomial_limit(const MonomialSequence& s) {
  if (!s.tail) fail(ErrorKind::Value, "a tail descriptor is required to classify the limit of a sequence");
  const TailDescriptor& t = *s.tail;
  switch (t.kind) {
    case TailDescriptor::Kind::Constant: return {MonomialLimit::Kind::Stable, t.value};
    case TailDescriptor::Kind::Decreasing: return {MonomialLimit::Kind::Zero, 0};
    case TailDescriptor::Kind::Increasing: return {MonomialLimit::Kind::Divergent, 0};
    case TailDescriptor::Kind::Periodic: {
      if (t.cycle.empty()) fail(ErrorKind::Value, "periodic tail needs a nonempty cycle");
      bool constant = std::all_of(t.cycle.begin(), t.cycle.end(), [&](long v) { return v == t.cycle.front(); });
      if (constant) return {MonomialLimit::Kind::Stable, t.cycle.front()};
      return {MonomialLimit::Kind::Divergent, 0};
    }
  }
  fail(ErrorKind::Internal, "bad tail descriptor");
}

TailDescriptor parse_tail_descriptor(const std::string& text) {
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto parse_long = [&](const std::string& v) {
    Rational r = parse_rational(v);
    if (r.get_den() != 1 || !r.get_num().fits_slong_p()) fail(ErrorKind::Value, "expected an integer, got '" + v + "'");
    return r.get_num().get_si();
  };
  TailDescriptor t{};
  if (head == "constant") {
    if (arg.empty()) fail(ErrorKind::Value, "constant tail needs a value, e.g. constant:5");
    t.kind = TailDescriptor::Kind::Constant;
    t.value = parse_long(arg);
  } else if (head == "decreasing" && arg.empty()) {
    t.kind = TailDescriptor::Kind::Decreasing;
  } else if (head == "increasing" && arg.empty()) {
    t.kind = TailDescriptor::Kind::Increasing;
  } else if (head == "periodic") {
    t.kind = TailDescriptor::Kind::Periodic;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) t.cycle.push_back(parse_long(item));
    if (t.cycle.empty()) fail(ErrorKind::Value, "periodic tail needs a cycle, e.g. periodic:0,1");
  } else {
    fail(ErrorKind::Value, "unknown tail descriptor '" + text + "'");
  }
  return t;
}

ConvergenceCheck is_q_convergent(const std::vector<MotElem>& terms, const MotElem& limit, const EvalPoint& p,
                                 const Rational& tol) {
  if (terms.empty()) fail(ErrorKind::Value, "is_q_convergent needs at least one term");
  if (tol <= 0) fail(ErrorKind::Value, "tolerance must be positive");
  ConvergenceCheck out;
  Rational target = limit.eval(p);
  for (const auto& t : terms) out.distances.push_back(abs(t.eval(p) - target));
  std::size_t k = terms.size();
  while (k > 0 && out.distances[k - 1] < tol) --k;
  if (k < terms.size()) {
    out.converged = true;
    out.settle_index = k;
  }
  return out;
}

} // namespace motint

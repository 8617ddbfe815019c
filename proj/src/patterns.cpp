#include "parrondo/patterns.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "graph.hpp"
#include "parrondo/cycle_walk.hpp"
#include "parrondo/games.hpp"

namespace parrondo {

namespace {

constexpr std::int64_t kMaxPatternLength = 1 << 20;

struct PatternParser {
  std::string_view text;
  std::size_t pos = 0;
  int depth = 0;

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool at_end() {
    skip_space();
    return pos >= text.size();
  }

  char peek() {
    skip_space();
    return text[pos];
  }

  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("pattern parse error at position " +
                                std::to_string(pos) + ": " + why);
  }

  std::int64_t parse_count() {
    skip_space();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      fail("expected a repeat count after '^'");
    std::int64_t value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + (text[pos] - '0');
      if (value > kMaxPatternLength) fail("repeat count too large");
      ++pos;
    }
    if (value == 0) fail("repeat count must be >= 1");
    return value;
  }

  // unit: 'A' | 'B' | '(' sequence ')', optionally followed by ^count.
  void parse_unit(std::vector<Game>& out) {
    char c = peek();
    std::vector<Game> unit;
    if (c == 'A' || c == 'a') {
      unit.push_back(Game::A);
      ++pos;
    } else if (c == 'B' || c == 'b') {
      unit.push_back(Game::B);
      ++pos;
    } else if (c == '(') {
      if (++depth > 64) fail("groups nested too deeply");
      ++pos;
      parse_sequence(unit);
      if (at_end() || peek() != ')') fail("missing ')'");
      ++pos;
      --depth;
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    std::int64_t count = 1;
    if (!at_end() && peek() == '^') {
      ++pos;
      count = parse_count();
    }
    if (static_cast<std::int64_t>(out.size()) +
            count * static_cast<std::int64_t>(unit.size()) >
        kMaxPatternLength)
      fail("pattern expands past the length cap");
    for (std::int64_t k = 0; k < count; ++k)
      out.insert(out.end(), unit.begin(), unit.end());
  }

  void parse_sequence(std::vector<Game>& out) {
    if (at_end() || peek() == ')') fail("empty pattern");
    while (!at_end() && peek() != ')') parse_unit(out);
  }
};

}  // namespace

Pattern::Pattern(std::vector<Game> letters) : letters_(std::move(letters)) {
  if (letters_.empty())
    throw std::invalid_argument("pattern must not be empty");
  if (static_cast<std::int64_t>(letters_.size()) > kMaxPatternLength)
    throw std::invalid_argument("pattern longer than the length cap");
}

Pattern Pattern::parse(std::string_view text) {
  PatternParser parser{text};
  std::vector<Game> letters;
  parser.parse_sequence(letters);
  if (!parser.at_end()) parser.fail("trailing input");
  return Pattern(std::move(letters));
}

Pattern Pattern::absb(std::int64_t r, std::int64_t s) {
  if (r < 3) throw std::domain_error("absb pattern: r must be >= 3");
  if (s < 1) throw std::domain_error("absb pattern: s must be >= 1");
  if (2 * s + r - 2 > kMaxPatternLength)
    throw std::invalid_argument("absb pattern: expands past the length cap");
  std::vector<Game> letters;
  letters.reserve(static_cast<std::size_t>(2 * s + r - 2));
  for (std::int64_t k = 0; k < s; ++k) {
    letters.push_back(Game::A);
    letters.push_back(Game::B);
  }
  for (std::int64_t k = 0; k < r - 2; ++k) letters.push_back(Game::B);
  return Pattern(std::move(letters));
}

std::string Pattern::str() const {
  std::string out;
  out.reserve(letters_.size());
  for (Game g : letters_) out.push_back(g == Game::A ? 'A' : 'B');
  return out;
}

namespace {

// One right-multiplication by a cycle-walk step: (M P)_ij depends only on
// the columns j-1 and j+1 of M, so the update is O(r^2) per letter.
SquareMatrix times_cycle_step(const SquareMatrix& m, const ScalarVec& up) {
  const std::int64_t r = m.size();
  SquareMatrix out(r, m.backend());
  const Scalar one = Scalar::one(m.backend());
  for (std::int64_t i = 0; i < r; ++i)
    for (std::int64_t j = 0; j < r; ++j) {
      const std::int64_t from_below = (j + r - 1) % r, from_above = (j + 1) % r;
      Scalar v = m.at(i, from_below) * up[static_cast<std::size_t>(from_below)] +
                 m.at(i, from_above) *
                     (one - up[static_cast<std::size_t>(from_above)]);
      out.set(i, j, v);
    }
  return out;
}

ScalarVec vec_cycle_step(const ScalarVec& v, const ScalarVec& up, Backend b) {
  const std::int64_t r = static_cast<std::int64_t>(v.size());
  const Scalar one = Scalar::one(b);
  ScalarVec out(v.size(), Scalar::zero(b));
  for (std::int64_t j = 0; j < r; ++j) {
    const std::int64_t below = (j + r - 1) % r, above = (j + 1) % r;
    out[static_cast<std::size_t>(j)] =
        v[static_cast<std::size_t>(below)] * up[static_cast<std::size_t>(below)] +
        v[static_cast<std::size_t>(above)] *
            (one - up[static_cast<std::size_t>(above)]);
  }
  return out;
}

Scalar step_payoff(const ScalarVec& v, const ScalarVec& up, Backend b) {
  const Scalar one = Scalar::one(b), two = Scalar::ratio(2).to_backend(b);
  Scalar total = Scalar::zero(b);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    total += v[i] * (two * up[i] - one);
  }
  return total;
}

}  // namespace

RateReport rate_pattern(std::int64_t r, const Scalar& rho, const Pattern& pat,
                        StartParity parity) {
  const CoinPair coins = coin_probs(r, rho);
  const Backend b = rho.backend();
  const Scalar one = Scalar::one(b);
  const Scalar half = Scalar::ratio(1, 2).to_backend(b);

  ScalarVec up_a(static_cast<std::size_t>(r), half);
  ScalarVec up_b(static_cast<std::size_t>(r), coins.p1.to_backend(b));
  up_b[0] = coins.p0.to_backend(b);
  const auto& up_of = [&](Game g) -> const ScalarVec& {
    return g == Game::A ? up_a : up_b;
  };

  // Composite one-period matrix M = P_{g_1} ... P_{g_d}.
  SquareMatrix m(r, b);
  for (std::int64_t i = 0; i < r; ++i) m.set(i, i, one);
  for (Game g : pat.letters()) m = times_cycle_step(m, up_of(g));

  detail::AdjList adj(static_cast<std::size_t>(r));
  for (std::int64_t i = 0; i < r; ++i)
    for (std::int64_t j = 0; j < r; ++j)
      if (!m.at(i, j).is_zero()) adj[static_cast<std::size_t>(i)].push_back(j);

  // Starting capitals: any residue for odd r; for even r the residues with
  // the requested parity (capital and capital mod r share parity there).
  std::vector<std::int64_t> starts;
  for (std::int64_t i = 0; i < r; ++i)
    if (r % 2 == 1 || (i % 2 == 0) == (parity == StartParity::Even))
      starts.push_back(i);

  const auto scc = detail::strongly_connected_components(adj);
  const auto closed = detail::closed_components(adj, scc);
  const auto seen = detail::reachable_from(adj, starts);

  std::vector<std::int64_t> hit_classes;
  for (std::int64_t i = 0; i < r; ++i) {
    if (!seen[static_cast<std::size_t>(i)]) continue;
    const std::int64_t c = scc.comp[static_cast<std::size_t>(i)];
    if (closed[static_cast<std::size_t>(c)] &&
        std::find(hit_classes.begin(), hit_classes.end(), c) == hit_classes.end())
      hit_classes.push_back(c);
  }
  if (hit_classes.size() != 1)
    throw std::domain_error(
        "rate_pattern: the composite chain has " +
        std::to_string(hit_classes.size()) +
        " reachable recurrent classes; the rate would depend on the start");

  std::vector<std::int64_t> members;
  for (std::int64_t i = 0; i < r; ++i)
    if (scc.comp[static_cast<std::size_t>(i)] == hit_classes[0])
      members.push_back(i);

  SquareMatrix sub(static_cast<std::int64_t>(members.size()), b);
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t c = 0; c < members.size(); ++c)
      sub.set(static_cast<std::int64_t>(a), static_cast<std::int64_t>(c),
              m.at(members[a], members[c]));
  const StationaryDist sd = stationary_linear_solve(sub);

  ScalarVec nu(static_cast<std::size_t>(r), Scalar::zero(b));
  for (std::size_t a = 0; a < members.size(); ++a)
    nu[static_cast<std::size_t>(members[a])] = sd.pi[a];
  const ScalarVec nu0 = nu;

  Scalar total = Scalar::zero(b);
  for (Game g : pat.letters()) {
    total += step_payoff(nu, up_of(g), b);
    nu = vec_cycle_step(nu, up_of(g), b);
  }

  // After one full period the distribution must return to where it started.
  for (std::size_t i = 0; i < nu.size(); ++i) {
    const Scalar drift = abs(nu[i] - nu0[i]);
    if (b == Backend::Exact ? !drift.is_zero() : drift.to_double() > 1e-10)
      throw std::runtime_error(
          "rate_pattern: stationary distribution not preserved over a period");
  }

  const Scalar mu = total / Scalar::ratio(pat.length()).to_backend(b);
  ParityNote note = ParityNote::Any;
  if (r % 2 == 0) {
    if (parity == StartParity::Even)
      note = ParityNote::EvenOnly;
    else
      note = (mu.is_exact() ? mu.is_zero() : std::abs(mu.to_double()) < 1e-14)
                 ? ParityNote::OddIsZero
                 : ParityNote::OddOnly;
  }
  return RateReport{mu, RateMethod::PatternComposite, note, b};
}

RateReport rate_absb(std::int64_t r, std::int64_t s, StartParity parity) {
  if (r < 3) throw std::domain_error("rate_absb: r must be >= 3");
  if (s < 1) throw std::domain_error("rate_absb: s must be >= 1");
  const std::int64_t d = 2 * s + r - 2;

  if (r % 2 == 1) {
    // mu = r/d * (2^s - 1)/(2^s + 1)
    mpz_class pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(s));
    mpq_class mu(mpz_class(r) * (pow2 - 1), mpz_class(d) * (pow2 + 1));
    mu.canonicalize();
    return RateReport{Scalar::exact(mu), RateMethod::AbsbClosedForm,
                      ParityNote::Any, Backend::Exact};
  }
  if (parity == StartParity::Odd)
    return RateReport{Scalar::ratio(0), RateMethod::AbsbClosedForm,
                      ParityNote::OddIsZero, Backend::Exact};

  // mu = r/d * 2^-s * sum_k ceil(2k/r) * C(s,k)
  mpz_class sum = 0;
  for (std::int64_t k = 1; k <= s; ++k) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(s),
                 static_cast<unsigned long>(k));
    sum += mpz_class((2 * k + r - 1) / r) * binom;
  }
  mpz_class pow2;
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(s));
  mpq_class mu(mpz_class(r) * sum, mpz_class(d) * pow2);
  mu.canonicalize();
  return RateReport{Scalar::exact(mu), RateMethod::AbsbClosedForm,
                    ParityNote::EvenOnly, Backend::Exact};
}

AsymptoticCheck asymptotic_pattern_check(std::int64_t r) {
  if (r < 4)
    throw std::domain_error("asymptotic_pattern_check: need r >= 4");
  std::int64_t s = -1;
  for (std::int64_t v = r; v > 0; v >>= 1) ++s;  // floor(log2 r)
  s -= 1;
  const RateReport rr = rate_absb(r, s, StartParity::Even);
  const double gap = (Scalar::ratio(1) - rr.mu).to_double();
  const double ref = 2.0 * static_cast<double>(s) / static_cast<double>(r);
  return AsymptoticCheck{static_cast<double>(s), gap, ref, gap / ref};
}

}  // namespace parrondo

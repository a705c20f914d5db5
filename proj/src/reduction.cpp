#include "formring/reduction.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace formring {

namespace {

using Vec = Vector<Elem>;

Vec act(const ScalarAlgebra& alg, const GroupDescriptor& g, const Symbol<Elem>& s, const Vec& v) {
  return mat_vec(alg, gen_matrix(alg, g, s), v);
}

ElementSet block_ideal(const FiniteRing& ring, const Vec& v, std::size_t lo, std::size_t hi) {
  std::vector<Elem> gens(v.begin() + static_cast<std::ptrdiff_t>(lo), v.begin() + static_cast<std::ptrdiff_t>(hi));
  return ideal_generated(ring, gens);
}

// Step recorder: letters are applied to the running vector in order; the final word lists them in evaluation order.
struct Runner {
  const GroupDescriptor& g;
  ScalarAlgebra alg;
  Vec cur;
  Word<Elem> applied;
  std::vector<std::string> steps;

  void apply(const Symbol<Elem>& s) {
    if (is_identity_symbol(alg, s)) return;
    const std::string why = symbol_violation(alg, g, s);
    if (!why.empty()) fail(ErrorKind::certification, show_symbol(alg, s) + " is not a valid generator here: " + why);
    cur = act(alg, g, s, cur);
    applied.push_back(Letter<Elem>{s, 1});
  }
  void apply_word(const Word<Elem>& w) {  // eval(w) applied to cur
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      if (it->exp < 0) {
        for (const auto& l : word_inverse(gen_inverse(alg, g, it->s))) apply(l.s);
      } else {
        apply(it->s);
      }
    }
  }
  Word<Elem> word() const { return Word<Elem>(applied.rbegin(), applied.rend()); }
};

std::uint64_t pack(const Vec& x, std::size_t lo, std::size_t hi) {
  std::uint64_t k = 0;
  for (std::size_t i = lo; i < hi; ++i) k = (k << 8) | x[i].index;
  return k;
}

}  // namespace

std::optional<UnimodularCertificate> unimodular_certificate(const FiniteRing& ring, const Vec& v) {
  const std::size_t m = v.size();
  std::unordered_map<std::uint16_t, Vec> coef;
  std::deque<Elem> queue{ring.zero()};
  coef.emplace(ring.zero().index, Vec(m, ring.zero()));
  const auto all = ring.elements();
  while (!queue.empty()) {
    const Elem s = queue.front();
    queue.pop_front();
    if (s == ring.one()) return UnimodularCertificate{v, coef.at(s.index)};
    for (std::size_t i = 0; i < m; ++i)
      for (Elem r : all) {
        const Elem t = ring.add(s, ring.mul(v[i], r));
        if (coef.count(t.index)) continue;
        Vec c = coef.at(s.index);
        c[i] = ring.add(c[i], r);
        coef.emplace(t.index, std::move(c));
        queue.push_back(t);
      }
  }
  return std::nullopt;
}

bool check_certificate(const FiniteRing& ring, const UnimodularCertificate& c) {
  if (c.v.size() != c.u.size()) return false;
  Elem acc = ring.zero();
  for (std::size_t i = 0; i < c.v.size(); ++i) acc = ring.add(acc, ring.mul(c.v[i], c.u[i]));
  return acc == ring.one();
}

CosetUnit find_unit_in_coset(const FiniteRing& ring, Elem a, const ElementSet& ideal) {
  if (!ring.commutative()) fail(ErrorKind::unsupported, "coset unit search needs a commutative ring");
  if (!is_semisimple(ring)) fail(ErrorKind::precondition, ring.name() + " is not semisimple; pass the quotient by the radical");
  if (ring.is_unit(a)) return {ring.zero(), a, ring.one()};
  auto gens = ideal.members();
  gens.push_back(a);
  const auto j = ideal_generated(ring, gens);
  const auto e = idempotent_generator(ring, j);
  if (!e) fail(ErrorKind::certification, "ideal R a + I is not generated by an idempotent");
  const auto units = ring.units();
  for (Elem i : ideal.members())
    for (Elem u : units)
      if (ring.add(a, i) == ring.mul(u, *e)) return {i, u, *e};
  fail(ErrorKind::certification, "no unit found in the coset");
}

ColumnReduction column_reduce_semisimple(const GroupDescriptor& g, const Vec& v) {
  const FiniteRing& ring = g.ring();
  const ScalarAlgebra alg = g.scalar();
  const std::size_t n = static_cast<std::size_t>(g.n), r = static_cast<std::size_t>(g.r());
  if (n > 8) fail(ErrorKind::resource_limit, "column reduction supports n <= 8");
  const auto e = idempotent_generator(ring, block_ideal(ring, v, 0, n));
  if (!e) fail(ErrorKind::precondition, "x-block ideal is not generated by an idempotent (ring not semisimple?)");
  Vec target(n, ring.zero());
  target[n - 1] = *e;
  // Moves on the x-block only.
  std::vector<Symbol<Elem>> moves;
  for (const auto& s : enumerate_symbols(g, ring.elements()))
    if (is_e_family(s.family) || s.family == Family::HM) moves.push_back(s);
  auto step = [&](const Symbol<Elem>& s, Vec x) {
    if (is_e_family(s.family)) {
      x[static_cast<std::size_t>(s.i)] = ring.add(x[static_cast<std::size_t>(s.i)], ring.mul(s.a, x[static_cast<std::size_t>(s.j)]));
    } else {
      const Elem xi = x[static_cast<std::size_t>(s.i)];
      for (std::size_t k = 0; k < r; ++k) x[k] = ring.add(x[k], ring.mul(s.zeta[k], xi));
    }
    return x;
  };
  Vec start(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
  struct Node {
    std::uint64_t parent;
    int move;
  };
  std::unordered_map<std::uint64_t, Node> seen;
  std::deque<Vec> queue{start};
  const std::uint64_t goal = pack(target, 0, n);
  seen.emplace(pack(start, 0, n), Node{0, -1});
  bool found = pack(start, 0, n) == goal;
  while (!queue.empty() && !found) {
    Vec x = queue.front();
    queue.pop_front();
    const std::uint64_t kx = pack(x, 0, n);
    for (std::size_t mi = 0; mi < moves.size(); ++mi) {
      Vec y = step(moves[mi], x);
      const std::uint64_t ky = pack(y, 0, n);
      if (seen.count(ky)) continue;
      seen.emplace(ky, Node{kx, static_cast<int>(mi)});
      if (ky == goal) {
        found = true;
        break;
      }
      queue.push_back(std::move(y));
    }
  }
  if (!found) fail(ErrorKind::certification, "x-block could not be reduced to (0, ..., 0, e)");
  std::vector<Symbol<Elem>> path;
  for (std::uint64_t k = goal; seen.at(k).move >= 0; k = seen.at(k).parent) path.push_back(moves[static_cast<std::size_t>(seen.at(k).move)]);
  // path is last-applied first, which is evaluation order
  ColumnReduction out{{}, *e};
  for (const auto& s : path) out.word.push_back(Letter<Elem>{s, 1});
  Vec check = mat_vec(alg, eval(alg, g, out.word), v);
  for (std::size_t i = 0; i < n; ++i)
    if (check[i] != target[i]) fail(ErrorKind::certification, "column reduction does not verify");
  return out;
}

QuotientGroup quotient_group(const GroupDescriptor& g, const ElementSet& ideal) {
  QuotientGroup out;
  out.q = quotient_ring(g.form->ring_ptr(), ideal);
  auto form = std::make_shared<const FormRing>(induce_parameter(*g.form, out.q.projection));
  std::vector<Elem> a;
  for (Elem x : g.a) a.push_back(out.q.projection(x));
  out.g = rebase_group(g, form, a);
  return out;
}

Vec project_vector(const QuotientGroup& qg, const Vec& v) {
  Vec out;
  for (Elem x : v) out.push_back(qg.q.projection(x));
  return out;
}

std::optional<Symbol<Elem>> lift_symbol(const GroupDescriptor& g, const QuotientGroup& qg, const Symbol<Elem>& s) {
  const ScalarAlgebra alg = g.scalar();
  const FiniteRing& ring = g.ring();
  auto preimages = [&](Elem q) {
    std::vector<Elem> out;
    for (Elem x : ring.elements())
      if (qg.q.projection(x) == q) out.push_back(x);
    return out;
  };
  Symbol<Elem> t = s;
  if (!is_vector_family(s.family)) {
    if (s.i == s.j && !is_e_family(s.family)) {
      for (Elem x : preimages(s.a)) {
        t.a = x;
        if (symbol_valid(alg, g, t)) return t;
      }
      return std::nullopt;
    }
    t.a = qg.q.lift.at(s.a.index);
    return symbol_valid(alg, g, t) ? std::optional<Symbol<Elem>>(t) : std::nullopt;
  }
  for (auto& z : t.zeta) z = qg.q.lift.at(z.index);
  for (Elem f : preimages(s.zeta_f)) {
    t.zeta_f = f;
    if (symbol_valid(alg, g, t)) return t;
  }
  return std::nullopt;
}

Word<Elem> improve_to_unit(const GroupDescriptor& g, const Vec& v, const GroupDescriptor* lift_target, const QuotientGroup* qg) {
  const FiniteRing& ring = g.ring();
  const ScalarAlgebra alg = g.scalar();
  const std::size_t n = static_cast<std::size_t>(g.n);
  if (!unimodular_certificate(ring, v)) fail(ErrorKind::precondition, "vector is not unimodular");
  Runner run{g, alg, v, {}, {}};
  auto liftable = [&](const Symbol<Elem>& s) { return !qg || lift_symbol(*lift_target, *qg, s).has_value(); };
  std::vector<Symbol<Elem>> singles;
  for (const auto& s : enumerate_symbols(g, ring.elements()))
    if (liftable(s)) singles.push_back(s);
  std::vector<Elem> small_pool = ring.units();
  for (Elem e : idempotents(ring)) small_pool.push_back(e);
  std::sort(small_pool.begin(), small_pool.end());
  small_pool.erase(std::unique(small_pool.begin(), small_pool.end()), small_pool.end());
  std::vector<Symbol<Elem>> pair_pool;
  for (const auto& s : enumerate_symbols(g, small_pool))
    if (liftable(s)) pair_pool.push_back(s);

  for (int round = 0; round < 256; ++round) {
    const auto cr = column_reduce_semisimple(g, run.cur);
    for (auto it = cr.word.rbegin(); it != cr.word.rend(); ++it)
      if (!liftable(it->s)) fail(ErrorKind::certification, "column reduction used a symbol without a lift");
    run.apply_word(cr.word);
    if (ring.is_unit(run.cur[n - 1])) return run.word();
    const std::size_t size = block_ideal(ring, run.cur, 0, n).count();
    auto grows = [&](const Vec& y) { return block_ideal(ring, y, 0, n).count() > size; };
    bool moved = false;
    for (const auto& s : singles) {
      if (grows(act(alg, g, s, run.cur))) {
        run.apply(s);
        moved = true;
        break;
      }
    }
    for (std::size_t a = 0; a < pair_pool.size() && !moved; ++a) {
      const Vec y = act(alg, g, pair_pool[a], run.cur);
      for (const auto& t : pair_pool)
        if (grows(act(alg, g, t, y))) {
          run.apply(pair_pool[a]);
          run.apply(t);
          moved = true;
          break;
        }
    }
    if (!moved) fail(ErrorKind::certification, "ideal ascent stalled before reaching a unit coordinate");
  }
  fail(ErrorKind::resource_limit, "ideal ascent did not terminate");
}

IsotropyReport check_isotropic_unimodular(const GroupDescriptor& g, const Vec& v) {
  const ScalarAlgebra alg = g.scalar();
  const FiniteRing& ring = g.ring();
  IsotropyReport rep;
  if (static_cast<int>(v.size()) != g.dim()) {
    rep.diagnostic = "vector has the wrong length";
    return rep;
  }
  rep.certificate = unimodular_certificate(ring, v);
  rep.unimodular = rep.certificate.has_value();
  if (!rep.unimodular) rep.diagnostic = "not unimodular";
  rep.isotropic = alg.is_zero(inner(alg, g, v, v));
  if (!rep.isotropic) {
    rep.diagnostic += std::string(rep.diagnostic.empty() ? "" : "; ") + "<v, v> != 0";
    return rep;
  }
  if (!g.hermitian()) {
    const std::size_t n = static_cast<std::size_t>(g.n);
    Elem q = ring.zero();
    for (std::size_t k = 0; k < n; ++k) q = ring.add(q, ring.mul(ring.conj(v[n + k]), v[k]));
    if (!alg.in_lambda(q)) {
      rep.isotropic = false;
      rep.diagnostic += std::string(rep.diagnostic.empty() ? "" : "; ") + "quadratic value " + ring.label(q) + " not in Lambda";
    }
  }
  return rep;
}

ReductionResult reduce_isotropic_unimodular(const GroupDescriptor& g, const Vec& v) {
  const FiniteRing& ring = g.ring();
  const ScalarAlgebra alg = g.scalar();
  const std::size_t n = static_cast<std::size_t>(g.n), r = static_cast<std::size_t>(g.r());
  const auto iso = check_isotropic_unimodular(g, v);
  if (!iso.unimodular) fail(ErrorKind::precondition, "vector is not unimodular");
  if (!iso.isotropic) fail(ErrorKind::precondition, "vector is not isotropic: " + iso.diagnostic);
  ReductionResult res;
  res.input = v;
  const Vec goal = basis_vector(alg, 2 * n, 2 * n - 1);
  if (vec_equal(alg, v, goal)) return res;
  Runner run{g, alg, v, {}, {}};
  const Family ef = e_family(g), rf = r_family(g), lf = l_family(g);
  const int last = static_cast<int>(n) - 1;

  if (!ring.is_unit(run.cur[n - 1])) {
    const auto j = jacobson_radical(ring);
    if (j.count() == 1) {
      run.apply_word(improve_to_unit(g, run.cur));
      run.steps.push_back("ideal ascent over the semisimple ring");
    } else {
      const auto qg = quotient_group(g, j);
      const auto wq = improve_to_unit(qg.g, project_vector(qg, run.cur), &g, &qg);
      Word<Elem> lifted;
      for (const auto& l : wq) {
        auto s = lift_symbol(g, qg, l.s);
        if (!s) fail(ErrorKind::certification, "quotient symbol has no lift");
        lifted.push_back(Letter<Elem>{*s, l.exp});
      }
      run.apply_word(lifted);
      run.steps.push_back("ideal ascent modulo the radical, lifted");
    }
    if (!ring.is_unit(run.cur[n - 1])) fail(ErrorKind::certification, "lifted word did not produce a unit coordinate");
  }

  const Elem u = run.cur[n - 1];
  if (u != ring.one()) {
    if (n < 2 || static_cast<int>(n) - 2 < static_cast<int>(r)) fail(ErrorKind::unsupported, "no free index for unit normalization");
    const Elem w = ring.inv(u), wi = u, m1 = ring.neg(ring.one());
    const int a = last, b = last - 1;
    // diag(w, w^{-1}) on (a, b) as a product of six elementary symbols
    const Word<Elem> d{{make_symbol(alg, ef, a, b, w), 1},  {make_symbol(alg, ef, b, a, ring.neg(wi)), 1},
                       {make_symbol(alg, ef, a, b, w), 1},  {make_symbol(alg, ef, a, b, m1), 1},
                       {make_symbol(alg, ef, b, a, ring.one()), 1}, {make_symbol(alg, ef, a, b, m1), 1}};
    run.apply_word(d);
    if (run.cur[n - 1] != ring.one()) fail(ErrorKind::certification, "unit normalization did not verify");
    run.steps.push_back("unit normalization");
  }

  if (r > 0) {
    std::vector<Elem> z;
    for (std::size_t k = 0; k < r; ++k) z.push_back(ring.neg(run.cur[k]));
    auto s = make_vector_symbol(alg, g, Family::HM, last, z);
    if (!s) fail(ErrorKind::certification, "hm payload for clearing x_1..x_r lies outside C");
    run.apply(*s);
  }
  for (std::size_t i = r; i + 1 < n; ++i) run.apply(make_symbol(alg, ef, static_cast<int>(i), last, ring.neg(run.cur[i])));
  for (std::size_t k = 0; k + 1 < n; ++k) run.apply(make_symbol(alg, lf, static_cast<int>(k), last, ring.neg(run.cur[n + k])));
  run.steps.push_back("cleared x and y coordinates");
  const Elem c = run.cur[2 * n - 1];
  if (c != ring.zero()) {
    const auto s = make_symbol(alg, lf, last, last, ring.neg(c));
    if (!symbol_valid(alg, g, s))
      fail(ErrorKind::certification, "remaining y_n = " + ring.label(c) + " cannot be removed: " + symbol_violation(alg, g, s));
    run.apply(s);
  }
  // Now cur = e_n; move it to e_{2n}.
  const auto pl = make_symbol(alg, lf, last, last, ring.one()), pr = make_symbol(alg, rf, last, last, ring.neg(ring.one()));
  if (symbol_valid(alg, g, pl) && symbol_valid(alg, g, pr)) {
    run.apply(pl);
    run.apply(pr);
    run.steps.push_back("diagonal pair swap");
  } else {
    const int k = last - 1;
    if (k < static_cast<int>(r)) fail(ErrorKind::unsupported, "no index available for the off-diagonal swap");
    run.apply(make_symbol(alg, lf, k, last, ring.one()));
    run.apply(make_symbol(alg, rf, last, k, ring.neg(ring.one())));
    run.apply(make_symbol(alg, ef, k, last, ring.neg(ring.one())));
    run.apply(make_symbol(alg, ef, last, k, ring.one()));
    run.steps.push_back("off-diagonal swap");
  }
  if (!vec_equal(alg, run.cur, goal)) fail(ErrorKind::certification, "reduction did not reach e_2n");
  res.word = run.word();
  if (!vec_equal(alg, mat_vec(alg, eval(alg, g, res.word), v), goal)) fail(ErrorKind::certification, "reduction word does not verify");
  res.steps = std::move(run.steps);
  return res;
}

Diagonalization diagonalize_mod_radical(const GroupDescriptor& g, const Matrix<Elem>& beta, const ElementSet& ideal) {
  const FiniteRing& ring = g.ring();
  const ScalarAlgebra alg = g.scalar();
  const std::size_t m = static_cast<std::size_t>(g.dim());
  if (!ideal.subset_of(jacobson_radical(ring))) fail(ErrorKind::precondition, "ideal is not inside the Jacobson radical");
  if (!is_member(alg, g, beta)) fail(ErrorKind::precondition, "beta is not a group member");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const Elem e = i == j ? ring.sub(beta(i, j), ring.one()) : beta(i, j);
      if (!ideal.contains(e)) fail(ErrorKind::precondition, "beta is not congruent to I modulo the ideal");
    }
  // Ideal-adic valuation: powers I^0 = R, I^1, ... until zero.
  std::vector<ElementSet> powers{ideal};
  while (powers.back().count() > 1 && powers.size() < 32) {
    std::vector<Elem> prods;
    for (Elem x : powers.back().members())
      for (Elem y : ideal.members()) prods.push_back(ring.mul(x, y));
    auto next = ideal_generated(ring, prods);
    if (next == powers.back()) fail(ErrorKind::precondition, "ideal is not nilpotent");
    powers.push_back(std::move(next));
  }
  const int top = static_cast<int>(powers.size());
  auto val = [&](Elem x) {
    int k = 0;
    while (k < top && powers[static_cast<std::size_t>(k)].contains(x)) ++k;
    return k;
  };
  auto potential = [&](const Matrix<Elem>& x) {
    long p = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (i != j) p += top - val(x(i, j));
    return p;
  };
  struct Cand {
    Symbol<Elem> s;
    Matrix<Elem> mat;
  };
  std::vector<Cand> cands;
  for (const auto& s : enumerate_symbols(g, ideal.members())) {
    auto mat = gen_matrix(alg, g, s);
    bool inside = true;
    for (std::size_t i = 0; i < m && inside; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (!ideal.contains(i == j ? ring.sub(mat(i, j), ring.one()) : mat(i, j))) inside = false;
    if (inside) cands.push_back({s, std::move(mat)});
  }
  Diagonalization out;
  Matrix<Elem> cur = beta;
  long p = potential(cur);
  for (int step = 0; p > 0 && step < 4096; ++step) {
    long best = p;
    std::size_t pick = cands.size();
    Matrix<Elem> best_m;
    for (std::size_t c = 0; c < cands.size(); ++c) {
      Matrix<Elem> next = mat_mul(alg, cur, cands[c].mat);
      const long q = potential(next);
      if (q < best) {
        best = q;
        pick = c;
        best_m = std::move(next);
      }
    }
    if (pick == cands.size()) fail(ErrorKind::certification, "diagonalizing sweep stalled");
    out.theta.push_back(Letter<Elem>{cands[pick].s, 1});
    cur = std::move(best_m);
    p = best;
  }
  if (p > 0) fail(ErrorKind::resource_limit, "diagonalizing sweep exceeded its step cap");
  for (std::size_t i = 0; i < m; ++i)
    if (!ring.is_unit(cur(i, i)) || !ideal.contains(ring.sub(cur(i, i), ring.one())))
      fail(ErrorKind::certification, "diagonal entry is not a unit congruent to 1");
  if (!mat_equal(alg, mat_mul(alg, beta, eval(alg, g, out.theta)), cur)) fail(ErrorKind::certification, "diagonalization does not verify");
  out.d = std::move(cur);
  return out;
}

}  // namespace formring

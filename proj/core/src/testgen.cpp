#include "xnr/testgen.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace xnr {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

std::int64_t Rng::range(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("Rng::range with hi < lo");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(span == 0 ? engine_() : below(span));
}

bool Rng::coin(double p_true) {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p_true;
}

namespace {

Rational random_rational(Rng& rng, std::int64_t bound) {
  const std::int64_t den = rng.range(1, 4);
  Rational q(Integer(static_cast<long>(rng.range(-bound * den, bound * den))),
             Integer(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

Term random_term(Rng& rng, std::size_t n) {
  if (rng.coin(0.8)) return Term::var(static_cast<std::uint32_t>(rng.range(1, static_cast<std::int64_t>(n))));
  return Term::constant(rng.coin());
}

}  // namespace

Bdd random_bdd(std::size_t n, std::size_t internal_node_budget, std::uint64_t seed) {
  if (n == 0 || internal_node_budget == 0) throw std::invalid_argument("random_bdd needs n, budget > 0");
  Rng rng(seed);
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 1U);
  rng.shuffle(order);

  // Layer widths: one root, each layer at most twice the previous one so
  // that every node can be referenced from the layer above.
  const std::size_t depth = std::min(n, internal_node_budget);
  std::vector<std::size_t> widths{1};
  std::size_t used = 1;
  for (std::size_t l = 1; l < depth && used < internal_node_budget; ++l) {
    const std::size_t remaining = internal_node_budget - used;
    const std::size_t share = (remaining + (depth - l) - 1) / (depth - l);
    const std::size_t w = std::max<std::size_t>(1, std::min(2 * widths.back(), share));
    widths.push_back(std::min(w, remaining));
    used += widths.back();
  }

  Bdd bdd;
  bdd.arity = n;
  // Sinks get ids 0 and 1; layer nodes follow.
  bdd.nodes.push_back({0, NodeLabel::leaf(ClassLabel::Zero)});
  bdd.nodes.push_back({1, NodeLabel::leaf(ClassLabel::One)});
  std::vector<std::vector<std::int64_t>> layers(widths.size());
  std::int64_t next_id = 2;
  for (std::size_t l = 0; l < widths.size(); ++l) {
    for (std::size_t k = 0; k < widths[l]; ++k) {
      layers[l].push_back(next_id);
      bdd.nodes.push_back({next_id++, NodeLabel::feature(order[l])});
    }
  }

  // Wire bottom-up. Targets are any deeper node or a sink; unreferenced
  // nodes of the next layer are served first.
  std::vector<std::int64_t> deeper{0, 1};
  for (std::size_t l = widths.size(); l-- > 0;) {
    std::vector<std::int64_t> pending = l + 1 < layers.size() ? layers[l + 1] : std::vector<std::int64_t>{0, 1};
    rng.shuffle(pending);
    for (const std::int64_t u : layers[l]) {
      std::int64_t child[2];
      for (int v = 0; v < 2; ++v) {
        if (!pending.empty()) {
          child[v] = pending.back();
          pending.pop_back();
        } else {
          child[v] = deeper[rng.below(deeper.size())];
        }
      }
      if (child[0] == child[1] && deeper.size() > 1) {
        do {
          child[1] = deeper[rng.below(deeper.size())];
        } while (child[1] == child[0]);
      }
      if (rng.coin()) std::swap(child[0], child[1]);
      bdd.edges.push_back({u, child[0], 0});
      bdd.edges.push_back({u, child[1], 1});
    }
    deeper.insert(deeper.end(), layers[l].begin(), layers[l].end());
  }
  bdd.root = layers[0][0];

  // Drop whatever the root cannot reach (possibly a sink).
  std::vector<std::uint8_t> reach(static_cast<std::size_t>(next_id), 0);
  std::vector<std::int64_t> stack{bdd.root};
  reach[static_cast<std::size_t>(bdd.root)] = 1;
  while (!stack.empty()) {
    const std::int64_t u = stack.back();
    stack.pop_back();
    for (const auto& e : bdd.edges) {
      if (e.from == u && !reach[static_cast<std::size_t>(e.to)]) {
        reach[static_cast<std::size_t>(e.to)] = 1;
        stack.push_back(e.to);
      }
    }
  }
  std::erase_if(bdd.nodes, [&](const BddNode& node) { return !reach[static_cast<std::size_t>(node.id)]; });
  std::erase_if(bdd.edges, [&](const BddEdge& e) { return !reach[static_cast<std::size_t>(e.from)]; });
  return bdd;
}

DecisionTree random_dt(std::size_t n, std::size_t depth, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("random_dt needs n > 0");
  Rng rng(seed);
  DecisionTree tree;
  Bdd& g = tree.graph;
  g.arity = n;
  std::int64_t next_id = 0;

  struct Frame {
    std::int64_t id;
    std::vector<std::uint32_t> unused;
    std::size_t level;
  };
  std::vector<std::uint32_t> all(n);
  std::iota(all.begin(), all.end(), 1U);
  const std::size_t max_depth = std::min(depth, n);

  auto make = [&](std::vector<std::uint32_t> unused, std::size_t level, std::vector<Frame>& work) {
    const std::int64_t id = next_id++;
    const bool leaf = level >= max_depth || unused.empty() || (level > 0 && rng.coin(0.2));
    if (leaf) {
      g.nodes.push_back({id, NodeLabel::leaf(rng.coin() ? ClassLabel::One : ClassLabel::Zero)});
    } else {
      const std::size_t pick = rng.below(unused.size());
      const std::uint32_t f = unused[pick];
      unused.erase(unused.begin() + static_cast<std::ptrdiff_t>(pick));
      g.nodes.push_back({id, NodeLabel::feature(f)});
      work.push_back({id, std::move(unused), level + 1});
    }
    return id;
  };

  std::vector<Frame> work;
  g.root = make(all, 0, work);
  while (!work.empty()) {
    Frame f = std::move(work.back());
    work.pop_back();
    const std::int64_t lo = make(f.unused, f.level, work);
    const std::int64_t hi = make(f.unused, f.level, work);
    g.edges.push_back({f.id, lo, 0});
    g.edges.push_back({f.id, hi, 1});
  }
  return tree;
}

Perceptron random_perceptron(std::size_t n, std::int64_t weight_bound, std::uint64_t seed) {
  if (n == 0 || weight_bound <= 0) throw std::invalid_argument("random_perceptron needs n, bound > 0");
  Rng rng(seed);
  Perceptron p;
  p.weights.reserve(n);
  for (std::size_t i = 0; i < n; ++i) p.weights.push_back(random_rational(rng, weight_bound));
  const auto spread = std::max<std::int64_t>(1, weight_bound * static_cast<std::int64_t>(n) / 2);
  p.bias = random_rational(rng, spread);
  return p;
}

Mlp random_mlp(std::size_t n, const std::vector<std::size_t>& hidden_widths,
               std::int64_t weight_bound, std::uint64_t seed) {
  if (n == 0 || weight_bound <= 0) throw std::invalid_argument("random_mlp needs n, bound > 0");
  Rng rng(seed);
  Mlp m;
  m.arity = n;
  std::vector<std::size_t> widths = hidden_widths;
  widths.push_back(1);
  std::size_t in = n;
  for (std::size_t k = 0; k < widths.size(); ++k) {
    const std::size_t out = widths[k];
    if (out == 0) throw std::invalid_argument("random_mlp: zero-width layer");
    MlpLayer layer;
    layer.weights.assign(in, {});
    for (auto& row : layer.weights) {
      for (std::size_t j = 0; j < out; ++j) row.push_back(random_rational(rng, weight_bound));
    }
    const auto spread = std::max<std::int64_t>(1, weight_bound * static_cast<std::int64_t>(in) / 2);
    for (std::size_t j = 0; j < out; ++j) layer.bias.push_back(random_rational(rng, spread));
    m.layers.push_back(std::move(layer));
    in = out;
  }
  return m;
}

Condition random_condition(std::size_t n, std::size_t max_literals, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("random_condition needs n > 0");
  Rng rng(seed);
  Condition phi;
  const std::uint64_t k = rng.below(max_literals + 1);
  for (std::uint64_t i = 0; i < k; ++i) {
    const Term a = random_term(rng, n);
    const Term b = random_term(rng, n);
    phi.add(Literal(a, rng.coin() ? Op::Eq : Op::Neq, b));
  }
  return phi;
}

CnfFormula random_cnf(std::size_t num_vars, std::size_t num_clauses, std::size_t width,
                      std::uint64_t seed) {
  if (num_vars == 0 || width == 0 || width > num_vars) {
    throw std::invalid_argument("random_cnf needs 0 < width <= num_vars");
  }
  Rng rng(seed);
  CnfFormula f;
  f.num_vars = num_vars;
  std::vector<int> vars(num_vars);
  std::iota(vars.begin(), vars.end(), 1);
  for (std::size_t c = 0; c < num_clauses; ++c) {
    rng.shuffle(vars);
    std::vector<int> clause(vars.begin(), vars.begin() + static_cast<std::ptrdiff_t>(width));
    for (int& lit : clause) {
      if (rng.coin()) lit = -lit;
    }
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

}  // namespace xnr

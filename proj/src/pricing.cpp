#include "conemeans/pricing.hpp"

#include <functional>

#include "conemeans/errors.hpp"
#include "conemeans/workers.hpp"

namespace conemeans {

void require_mean_pair(const Vector& u, const Vector& v) {
  require_same_space(u, v);
  if (v.is_zero()) throw DomainError("conditional mean needs v != 0");
  if (!is_positive(u) || !cone_leq(u, v)) throw DomainError("conditional mean needs 0 <= u <= v");
}

namespace {

class ChainPricing final : public VectorPricing {
 public:
  explicit ChainPricing(Chain chain) : chain_(std::move(chain)) {}
  const Space& space() const override { return chain_.space; }
  PriceValue eval(const Vector& u, const Vector& v) const override { return eval_chain_pricing(chain_, u, v); }
  std::string describe() const override {
    std::string s = "chain[";
    for (std::size_t i = 0; i < chain_.elements.size(); ++i) s += (i ? ", " : "") + chain_.elements[i].label;
    return s + "]";
  }
  const Chain& chain() const { return chain_; }

 private:
  Chain chain_;
};

class FaithfulQuotient final : public VectorPricing {
 public:
  FaithfulQuotient(Space space, Functional p) : space_(std::move(space)), p_(std::move(p)) {}
  const Space& space() const override { return space_; }
  PriceValue eval(const Vector& u, const Vector& v) const override {
    require_same_space(u, v);
    if (!is_positive(u) || !is_positive(v)) throw DomainError("pricing needs positive vectors");
    if (v.is_zero()) return u.is_zero() ? PriceValue(1L) : PriceValue::infinity();
    return PriceValue::ratio(p_.eval(u), p_.eval(v));
  }
  std::string describe() const override { return "quotient(" + p_.describe() + ")"; }

 private:
  Space space_;
  Functional p_;
};

class MeanFromPricing final : public ConditionalMean {
 public:
  explicit MeanFromPricing(PricingPtr r) : r_(std::move(r)) {}
  const Space& space() const override { return r_->space(); }
  Rational eval(const Vector& u, const Vector& v) const override {
    require_mean_pair(u, v);
    return r_->eval(u, v).value();
  }
  std::string describe() const override { return "mean(" + r_->describe() + ")"; }

 private:
  PricingPtr r_;
};

class PricingFromMean final : public VectorPricing {
 public:
  explicit PricingFromMean(MeanPtr P) : P_(std::move(P)) {}
  const Space& space() const override { return P_->space(); }
  PriceValue eval(const Vector& u, const Vector& v) const override {
    require_same_space(u, v);
    if (!is_positive(u) || !is_positive(v)) throw DomainError("pricing needs positive vectors");
    const Vector w = u + v;
    if (w.is_zero()) return PriceValue(1L);
    return PriceValue::ratio(P_->eval(u, w), P_->eval(v, w));
  }
  std::string describe() const override { return "pricing(" + P_->describe() + ")"; }

 private:
  MeanPtr P_;
};

class Perturbed final : public VectorPricing {
 public:
  Perturbed(PricingPtr r, Vector u, Vector v, Rational eps)
      : r_(std::move(r)), u_(std::move(u)), v_(std::move(v)), eps_(std::move(eps)) {}
  const Space& space() const override { return r_->space(); }
  PriceValue eval(const Vector& u, const Vector& v) const override {
    PriceValue base = r_->eval(u, v);
    if (u == u_ && v == v_) return base + PriceValue(eps_);
    return base;
  }
  std::string describe() const override { return "perturbed(" + r_->describe() + ")"; }

 private:
  PricingPtr r_;
  Vector u_, v_;
  Rational eps_;
};

bool strictly_positive(const Functional& p, const Space& space) {
  if (!is_positive_functional(p, space)) return false;
  if (auto fc = space.as<FiniteCoordSpace>()) {
    for (int i = 0; i < fc->size; ++i)
      if (p.eval(Vector::delta(space, {i})) <= 0) return false;
    return true;
  }
  if (auto gs = space.as<GroupSpace>()) {
    if (p.as<CountingFunctional>()) return true;
    if (!gs->group.is_finite()) return false;
    for (const auto& x : gs->group.elements())
      if (p.eval(Vector::delta(space, x)) <= 0) return false;
    return true;
  }
  if (auto pc = space.as<PolyConeSpace>()) {
    auto d = p.as<DualFunctional>();
    if (!d) return false;
    for (const auto& g : pc->generators) {
      Rational s = 0;
      bool zero = true;
      for (std::size_t i = 0; i < g.size(); ++i) {
        s += d->values[i] * g[i];
        zero = zero && g[i] == 0;
      }
      if (!zero && s <= 0) return false;
    }
    return true;
  }
  return false;  // no total strictly positive functional on Z among the implemented kinds
}

enum class Outcome { Pass, Fail, Skip };

struct Sample {
  std::vector<Vector> xs;  // u, v, w
  Rational t;
};

std::string render(const Sample& s) {
  static const char* names[] = {"u", "v", "w"};
  std::string out;
  for (std::size_t i = 0; i < s.xs.size(); ++i) out += std::string(i ? ", " : "") + names[i] + " = " + s.xs[i].to_string();
  return out + ", t = " + to_string(s.t);
}

// Deterministic shrink: try 0, 1 and half the numerator on every entry while
// the failure persists.
Sample shrink(Sample s, const std::function<Outcome(const Sample&)>& check) {
  auto fails = [&](const Sample& c) {
    try {
      return check(c) == Outcome::Fail;
    } catch (const Error&) {
      return false;
    }
  };
  bool progress = true;
  int rounds = 0;
  while (progress && rounds++ < 64) {
    progress = false;
    for (std::size_t k = 0; k < s.xs.size(); ++k) {
      for (std::size_t i = 0; i < s.xs[k].entry_count(); ++i) {
        const Rational cur = s.xs[k].entry(i);
        Integer half_num = cur.get_num() / 2;
        Rational half(half_num, cur.get_den());
        half.canonicalize();
        for (const Rational& cand : {Rational(0), Rational(1), half}) {
          if (cur == 0 || cand == cur) continue;
          Sample trial = s;
          trial.xs[k] = s.xs[k].with_entry(i, cand);
          if (!is_positive(trial.xs[k])) continue;
          if (fails(trial)) {
            s = std::move(trial);
            progress = true;
            break;
          }
        }
        if (progress) break;
      }
      if (progress) break;
    }
  }
  return s;
}

void run_check(Report& report, const std::string& name, const Sample& sample,
               const std::function<Outcome(const Sample&)>& check) {
  auto& c = report.get(name);
  Outcome o;
  try {
    o = check(sample);
  } catch (const UndefinedProduct&) {
    o = Outcome::Skip;
  } catch (const Error& e) {
    ++c.checked;
    c.fail(render(sample) + ": " + e.what());
    return;
  }
  if (o == Outcome::Skip) {
    ++c.skipped;
    return;
  }
  ++c.checked;
  if (o == Outcome::Fail && c.passed) c.fail(render(shrink(sample, check)));
}

Outcome eq(const PriceValue& a, const PriceValue& b) { return a == b ? Outcome::Pass : Outcome::Fail; }
Outcome eq(const Rational& a, const Rational& b) { return a == b ? Outcome::Pass : Outcome::Fail; }

void mean_checks(Report& report, const ConditionalMean& P, const Sample& s) {
  run_check(report, "CM1", s, [&P](const Sample& x) {
    const Vector base = x.xs[0] + x.xs[1] + x.xs[2];
    if (base.is_zero()) return Outcome::Skip;
    return eq(P.eval(x.xs[0] + x.xs[1], base), P.eval(x.xs[0], base) + P.eval(x.xs[1], base));
  });
  run_check(report, "CM2", s, [&P](const Sample& x) {
    const Vector mid = x.xs[0] + x.xs[1];
    const Vector top = mid + x.xs[2];
    if (mid.is_zero()) return Outcome::Skip;
    return eq(P.eval(x.xs[0], top), P.eval(x.xs[0], mid) * P.eval(mid, top));
  });
  run_check(report, "CM3", s, [&P](const Sample& x) {
    const Vector a = x.xs[0] + x.xs[2];
    if (a.is_zero()) return Outcome::Skip;
    return eq(P.eval(a, a), Rational(1));
  });
  run_check(report, "CM-range", s, [&P](const Sample& x) {
    const Vector top = x.xs[0] + x.xs[1];
    if (top.is_zero()) return Outcome::Skip;
    const Rational p = P.eval(x.xs[0], top);
    return p >= 0 && p <= 1 ? Outcome::Pass : Outcome::Fail;
  });
}

Sample draw(Sampler& sampler) {
  Sample s;
  for (int i = 0; i < 3; ++i) s.xs.push_back(sampler.positive_vector());
  s.t = sampler.positive_rational();
  return s;
}

std::vector<Sample> draw_all(Sampler& sampler, std::size_t count) {
  std::vector<Sample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(draw(sampler));
  return out;
}

// Per-sample reports are evaluated on the worker pool and folded in sample order.
void evaluate(Report& report, const std::vector<Sample>& samples,
              const std::function<void(Report&, const Sample&)>& body) {
  std::vector<Report> parts(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) { body(parts[i], samples[i]); });
  for (const auto& part : parts)
    for (const auto& c : part.checks) {
      auto& total = report.get(c.name);
      total.checked += c.checked;
      total.skipped += c.skipped;
      if (!c.passed) total.fail(c.witness);
    }
}

}  // namespace

PricingPtr chain_pricing(Chain chain) { return std::make_shared<ChainPricing>(std::move(chain)); }

const Chain* pricing_chain(const PricingPtr& r) {
  auto c = dynamic_cast<const ChainPricing*>(r.get());
  return c ? &c->chain() : nullptr;
}

PricingPtr faithful_quotient(const Space& space, Functional p) {
  if (!strictly_positive(p, space)) throw InputError("quotient pricing needs a strictly positive functional on " + space.describe());
  return std::make_shared<FaithfulQuotient>(space, std::move(p));
}

MeanPtr cm_from_vp(PricingPtr r) { return std::make_shared<MeanFromPricing>(std::move(r)); }

PricingPtr vp_from_cm(MeanPtr P) { return std::make_shared<PricingFromMean>(std::move(P)); }

PricingPtr perturbed_pricing(PricingPtr r, Vector u, Vector v, Rational eps) {
  return std::make_shared<Perturbed>(std::move(r), std::move(u), std::move(v), std::move(eps));
}

Report check_axioms(const PricingPtr& r, const SamplerConfig& config) {
  Report report;
  report.subject = r->describe();
  for (const char* name : {"VP1", "VP2", "VP3", "VP4", "VP5", "VP6", "VP7", "VP8"}) report.add(name);
  const MeanPtr P = cm_from_vp(r);
  for (const char* name : {"CM1", "CM2", "CM3", "CM-range"}) report.add(name);
  Sampler sampler(r->space(), config);
  const VectorPricing& R = *r;
  const Vector zero = Vector::zero(r->space());
  evaluate(report, draw_all(sampler, config.count), [&](Report& out, const Sample& s) {
    run_check(out, "VP1", s, [&R](const Sample& x) {
      if (x.xs[2].is_zero()) return Outcome::Skip;
      return eq(R.eval(x.xs[0] + x.xs[1], x.xs[2]), R.eval(x.xs[0], x.xs[2]) + R.eval(x.xs[1], x.xs[2]));
    });
    run_check(out, "VP2", s, [&R](const Sample& x) {
      const PriceValue a = R.eval(x.xs[0], x.xs[1]);
      const PriceValue b = R.eval(x.xs[1], x.xs[2]);
      if (PriceValue::undefined_product(a, b)) return Outcome::Skip;
      return eq(R.eval(x.xs[0], x.xs[2]), a * b);
    });
    run_check(out, "VP3", s, [&R](const Sample& x) { return eq(R.eval(x.xs[0], x.xs[0]), PriceValue(1L)); });
    run_check(out, "VP4", s, [&R](const Sample& x) {
      return R.eval(x.xs[0], x.xs[2]) <= R.eval(x.xs[0] + x.xs[1], x.xs[2]) ? Outcome::Pass : Outcome::Fail;
    });
    run_check(out, "VP5", s, [&R](const Sample& x) {
      if (x.xs[2].is_zero()) return Outcome::Skip;
      const PriceValue lhs = R.eval(x.xs[0] * x.t + x.xs[1], x.xs[2]);
      return eq(lhs, PriceValue(x.t) * R.eval(x.xs[0], x.xs[2]) + R.eval(x.xs[1], x.xs[2]));
    });
    run_check(out, "VP6", s, [&R](const Sample& x) {
      return eq(R.eval(x.xs[0], x.xs[1]), R.eval(x.xs[1], x.xs[0]).inverse());
    });
    run_check(out, "VP7", s, [&R, &zero](const Sample& x) {
      const Vector& w = x.xs[2];
      if (R.eval(zero, zero) != PriceValue(1L)) return Outcome::Fail;
      if (w.is_zero()) return Outcome::Pass;
      bool ok = R.eval(zero, w) == PriceValue(0L) && R.eval(w, zero) == PriceValue::infinity();
      return ok ? Outcome::Pass : Outcome::Fail;
    });
    run_check(out, "VP8", s, [&R](const Sample& x) {
      if (x.xs[0].is_zero() && x.xs[1].is_zero()) return Outcome::Skip;
      const PriceValue base = R.eval(x.xs[0], x.xs[1]);
      bool ok = R.eval(x.xs[0] * x.t, x.xs[1]) == PriceValue(x.t) * base &&
                R.eval(x.xs[0], x.xs[1] * x.t) == base * PriceValue(Rational(1 / x.t));
      return ok ? Outcome::Pass : Outcome::Fail;
    });
    mean_checks(out, *P, s);
  });
  return report;
}

Report check_axioms(const MeanPtr& P, const SamplerConfig& config) {
  Report report;
  report.subject = P->describe();
  for (const char* name : {"CM1", "CM2", "CM3", "CM-range"}) report.add(name);
  Sampler sampler(P->space(), config);
  evaluate(report, draw_all(sampler, config.count), [&](Report& out, const Sample& s) { mean_checks(out, *P, s); });
  return report;
}

Report check_roundtrip(const PricingPtr& r, const SamplerConfig& config) {
  Report report;
  report.subject = r->describe();
  const MeanPtr P = cm_from_vp(r);
  const PricingPtr rr = vp_from_cm(P);
  const MeanPtr PP = cm_from_vp(vp_from_cm(P));
  report.add("vp_from_cm(cm_from_vp(r)) = r");
  report.add("cm_from_vp(vp_from_cm(P)) = P");
  Sampler sampler(r->space(), config);
  evaluate(report, draw_all(sampler, config.count), [&](Report& out, const Sample& s) {
    run_check(out, "vp_from_cm(cm_from_vp(r)) = r", s,
              [&](const Sample& x) { return eq(rr->eval(x.xs[0], x.xs[1]), r->eval(x.xs[0], x.xs[1])); });
    run_check(out, "cm_from_vp(vp_from_cm(P)) = P", s, [&](const Sample& x) {
      const Vector top = x.xs[0] + x.xs[1];
      if (top.is_zero()) return Outcome::Skip;
      return eq(PP->eval(x.xs[0], top), P->eval(x.xs[0], top));
    });
  });
  return report;
}

Report check_roundtrip(const MeanPtr& P, const SamplerConfig& config) {
  Report report;
  report.subject = P->describe();
  const PricingPtr r = vp_from_cm(P);
  const MeanPtr PP = cm_from_vp(r);
  const PricingPtr rr = vp_from_cm(cm_from_vp(r));
  report.add("cm_from_vp(vp_from_cm(P)) = P");
  report.add("vp_from_cm(cm_from_vp(r)) = r");
  Sampler sampler(P->space(), config);
  evaluate(report, draw_all(sampler, config.count), [&](Report& out, const Sample& s) {
    run_check(out, "cm_from_vp(vp_from_cm(P)) = P", s, [&](const Sample& x) {
      const Vector top = x.xs[0] + x.xs[1];
      if (top.is_zero()) return Outcome::Skip;
      return eq(PP->eval(x.xs[0], top), P->eval(x.xs[0], top));
    });
    run_check(out, "vp_from_cm(cm_from_vp(r)) = r", s,
              [&](const Sample& x) { return eq(rr->eval(x.xs[0], x.xs[1]), r->eval(x.xs[0], x.xs[1])); });
  });
  return report;
}

bool fin_ideal_contains(const PricingPtr& r, const Vector& v, const Vector& u) {
  if (v.is_zero()) throw DomainError("finiteness ideal needs v != 0");
  return r->eval(u, v).is_finite();
}

}  // namespace conemeans

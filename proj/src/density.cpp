// Interval families, their complements, and density profiles.

#include <cfcircle/density.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace cfcircle {

// ---------------------------------------------------------------------------
// IndexSet.

bool IndexSet::contains(long long v) const {
  return std::binary_search(indices.begin(), indices.end(), v);
}

long long IndexSet::count_leq(long long v) const {
  return std::upper_bound(indices.begin(), indices.end(), v) -
         indices.begin();
}

IndexSet make_index_set(std::vector<long long> indices,
                        std::string descriptor) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return IndexSet{std::move(indices), std::move(descriptor)};
}

IndexSet index_union(const IndexSet& a, const IndexSet& b,
                     std::string descriptor) {
  std::vector<long long> merged;
  merged.reserve(a.indices.size() + b.indices.size());
  std::set_union(a.indices.begin(), a.indices.end(), b.indices.begin(),
                 b.indices.end(), std::back_inserter(merged));
  return IndexSet{std::move(merged), std::move(descriptor)};
}

// ---------------------------------------------------------------------------
// IntervalFamily.

struct IntervalFamily::Impl {
  std::string name;
  bool rule_backed = false;
  long long s1 = 1;
  std::function<Int(long long)> length_of;
  mutable std::vector<long long> s, t;  // materialized prefix, 0-based store

  void materialize(long long i) const {
    if (!rule_backed) return;
    while (static_cast<long long>(s.size()) < i) {
      const long long idx = static_cast<long long>(s.size()) + 1;
      const long long start = s.empty() ? s1 : t.back() + 2;
      const Int len = length_of(idx);
      if (len < 0) throw std::invalid_argument("interval length must be >= 0");
      const Int end = Int(start) + len;
      if (end > Int(1) << 62)
        throw std::overflow_error("interval endpoint exceeds 2^62");
      s.push_back(start);
      t.push_back(static_cast<long long>(end));
    }
  }
};

IntervalFamily::IntervalFamily(std::shared_ptr<Impl> impl)
    : impl_(std::move(impl)) {}

IntervalFamily IntervalFamily::from_rule(
    std::string name, long long s1, std::function<Int(long long)> length_of) {
  if (s1 < 1) throw std::invalid_argument("s_1 must be >= 1");
  if (!length_of) throw std::invalid_argument("null length rule");
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->rule_backed = true;
  impl->s1 = s1;
  impl->length_of = std::move(length_of);
  return IntervalFamily(std::move(impl));
}

IntervalFamily IntervalFamily::fixed(std::string name,
                                     std::vector<long long> s,
                                     std::vector<long long> t) {
  if (s.size() != t.size())
    throw std::invalid_argument("endpoint lists must have equal length");
  if (s.empty()) throw std::invalid_argument("family must be nonempty");
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->rule_backed = false;
  impl->s = std::move(s);
  impl->t = std::move(t);
  impl->s1 = impl->s.front();
  return IntervalFamily(std::move(impl));
}

long long IntervalFamily::s(long long i) const {
  if (i < 1) throw std::invalid_argument("interval index must be >= 1");
  impl_->materialize(i);
  if (i > static_cast<long long>(impl_->s.size()))
    throw std::out_of_range("interval index past the end of a fixed family");
  return impl_->s[static_cast<size_t>(i - 1)];
}

long long IntervalFamily::t(long long i) const {
  if (i < 1) throw std::invalid_argument("interval index must be >= 1");
  impl_->materialize(i);
  if (i > static_cast<long long>(impl_->t.size()))
    throw std::out_of_range("interval index past the end of a fixed family");
  return impl_->t[static_cast<size_t>(i - 1)];
}

std::optional<long long> IntervalFamily::size() const {
  if (impl_->rule_backed) return std::nullopt;
  return static_cast<long long>(impl_->s.size());
}

long long IntervalFamily::cover_count(long long depth) const {
  long long count = 0;
  for (long long i = 1;; ++i) {
    if (!impl_->rule_backed &&
        i > static_cast<long long>(impl_->s.size()))
      break;
    if (s(i) > depth) break;
    ++count;
  }
  return count;
}

const std::string& IntervalFamily::name() const { return impl_->name; }

std::string IntervalFamily::descriptor() const {
  std::ostringstream os;
  os << "family{" << impl_->name << ", s1=" << impl_->s1;
  const long long show =
      std::min<long long>(impl_->rule_backed
                              ? 4
                              : static_cast<long long>(impl_->s.size()),
                          4);
  for (long long i = 1; i <= show; ++i)
    os << ", [" << s(i) << "," << t(i) << "]";
  os << ", ...}";
  return os.str();
}

IntervalFamily family_from_exponent(const Rat& nu, long long start) {
  if (nu <= 1) throw std::invalid_argument("exponent must exceed 1");
  std::ostringstream name;
  name << "power(" << nu << ")";
  const Int p = num(nu);
  const Int q = den(nu);
  return IntervalFamily::from_rule(
      name.str(), start,
      [p, q](long long i) { return ipow_floor(Int(i), p, q); });
}

FamilyCheck family_validate(const IntervalFamily& f, long long horizon) {
  FamilyCheck out;
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (auto sz = f.size()) horizon = std::min(horizon, *sz);
  out.horizon = horizon;
  Int max_first_half = -1, max_second_half = -1;
  for (long long i = 1; i <= horizon; ++i) {
    if (f.t(i) < f.s(i) || f.s(i) < 1) {
      out.ok = false;
      out.violation_index = i;
      out.rule = "order";
      return out;
    }
    if (i > 1 && f.s(i) != f.t(i - 1) + 2) {
      out.ok = false;
      out.violation_index = i;
      out.rule = "gap";
      return out;
    }
    const Int len = Int(f.t(i)) - Int(f.s(i));
    if (len > out.max_length) out.max_length = len;
    if (i <= out.horizon / 2) {
      if (len > max_first_half) max_first_half = len;
    } else {
      if (len > max_second_half) max_second_half = len;
    }
  }
  out.growth_ok = out.horizon < 2 || max_second_half > max_first_half;
  return out;
}

IndexSet complement_support(const IntervalFamily& f, long long depth) {
  std::vector<long long> out;
  for (long long v = 1; v < f.s(1) && v <= depth; ++v) out.push_back(v);
  for (long long i = 1;; ++i) {
    if (auto sz = f.size(); sz && i > *sz) break;
    if (f.s(i) > depth) break;
    const long long gap = f.t(i) + 1;
    if (gap <= depth) out.push_back(gap);
  }
  std::ostringstream desc;
  desc << "complement(" << f.name() << ", depth=" << depth << ")";
  return make_index_set(std::move(out), desc.str());
}

DensityReport density_profile(const IndexSet& set,
                              std::vector<long long> checkpoints) {
  if (checkpoints.empty())
    throw std::invalid_argument("need at least one checkpoint");
  for (size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 1 ||
        (i > 0 && checkpoints[i] <= checkpoints[i - 1]))
      throw std::invalid_argument("checkpoints must be positive, increasing");
  }
  DensityReport rep;
  rep.checkpoints = std::move(checkpoints);
  for (size_t i = 0; i < rep.checkpoints.size(); ++i) {
    const long long n = rep.checkpoints[i];
    const long long c = set.count_leq(n);
    rep.counts.push_back(c);
    rep.ratios.push_back(Rat(c, n));
    if (i > 0 && rep.ratios[i] > rep.ratios[i - 1])
      rep.ratios_nonincreasing = false;
  }
  return rep;
}

IndexSet predicted_exception_set(const IntervalFamily& f, long long m,
                                 long long i0, long long depth) {
  if (m < 1) throw std::invalid_argument("margin m must be >= 1");
  if (i0 < 1) throw std::invalid_argument("cutoff i0 must be >= 1");
  std::vector<long long> out;
  // Head: everything before interval i0.
  for (long long v = 1; v < f.s(i0) && v <= depth; ++v) out.push_back(v);
  // Gap points between consecutive intervals.
  for (long long i = 1;; ++i) {
    if (auto sz = f.size(); sz && i > *sz) break;
    if (f.s(i) > depth) break;
    if (f.t(i) + 1 <= depth) out.push_back(f.t(i) + 1);
  }
  // Margins of width m at both ends of every interval from i0 on.
  for (long long j = i0;; ++j) {
    if (auto sz = f.size(); sz && j > *sz) break;
    if (f.s(j) > depth) break;
    const long long sj = f.s(j), tj = f.t(j);
    for (long long v = sj; v <= std::min(sj + m - 1, tj) && v <= depth; ++v)
      out.push_back(v);
    for (long long v = std::max(tj - m + 1, sj); v <= tj && v <= depth; ++v)
      out.push_back(v);
  }
  std::ostringstream desc;
  desc << "predicted(" << f.name() << ", m=" << m << ", i0=" << i0
       << ", depth=" << depth << ")";
  return make_index_set(std::move(out), desc.str());
}

}  // namespace cfcircle

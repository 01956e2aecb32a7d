#include "crdtlab/space.hpp"

#include <random>
#include <sstream>

#include "crdtlab/error.hpp"
#include "designs.hpp"

namespace crdtlab::sim {

namespace {

template <class Replica>
class Workload {
 public:
  explicit Workload(const SpaceParams& p) : p_(p), rng_(p.seed) {
    for (std::uint32_t r = 0; r < p.replicas; ++r)
      replicas_.emplace_back(p.replicas, ReplicaId{r});
    table_.params = p;
  }

  SpaceTable run() {
    record(0);
    for (std::size_t round = 1; round <= p_.cycles; ++round) {
      const Element e = element_name(round % p_.elements);
      const auto remover = static_cast<std::uint32_t>(rng_() % p_.replicas);
      broadcast(remover, crdtlab::remove(e));
      for (std::uint32_t r = 0; r < p_.replicas; ++r) {
        broadcast(r, crdtlab::add(e));
        ++table_.add_effects;
      }
      record(round);
    }
    return std::move(table_);
  }

 private:
  // Effects reach every other replica in issue order, which is causal.
  void broadcast(std::uint32_t source, const Update& u) {
    const auto msg = replicas_[source].update(u);
    observe(source);
    for (std::uint32_t t = 0; t < p_.replicas; ++t) {
      if (t == source) continue;
      replicas_[t].deliver(msg);
      observe(t);
    }
  }

  void observe(std::uint32_t r) {
    const Replica& rep = replicas_[r];
    rep.check();
    const std::size_t entries = rep.entries();
    const std::size_t bound = rep.elements().size() * p_.replicas;
    table_.max_entries = std::max(table_.max_entries, entries);
    table_.max_aux = std::max(table_.max_aux, rep.aux());
    if (entries > bound)
      table_.max_bound_excess = std::max(table_.max_bound_excess, entries - bound);
  }

  void record(std::size_t round) {
    for (std::size_t r = 0; r < replicas_.size(); ++r)
      table_.rows.push_back({round, r, replicas_[r].entries(), replicas_[r].aux(),
                             replicas_[r].elements().size()});
  }

  SpaceParams p_;
  std::mt19937_64 rng_;
  std::vector<Replica> replicas_;
  SpaceTable table_;
};

}  // namespace

SpaceTable measure_space(const SpaceParams& p) {
  if (p.replicas == 0 || p.elements == 0)
    throw ConfigError("space workload needs at least one replica and one element");
  switch (p.design) {
    case Design::or_set: return Workload<detail::OrSetReplica>(p).run();
    case Design::opt_or_set: return Workload<detail::OptOrSetReplica>(p).run();
    default:
      throw ConfigError(std::string("space measurement supports or-set and opt-or-set, not ") +
                        to_string(p.design));
  }
}

std::string render_csv(const SpaceTable& t) {
  std::ostringstream os;
  os << "round,replica,E_size," << aux_column(t.params.design) << ",elements_count\n";
  for (const auto& r : t.rows)
    os << r.round << ',' << r.replica << ',' << r.entries << ',' << r.aux << ','
       << r.elements << '\n';
  return os.str();
}

}  // namespace crdtlab::sim

#pragma once

// Social choice functions f : L_q^n -> [q], the built-in rules, neutrality
// checks and exact distances to CONST, DICT, two-valued and NONMANIP.

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gslab/parallel.hpp"
#include "gslab/ranking.hpp"
#include "gslab/rational.hpp"

namespace gslab {

// Explicit table of winners indexed by profile encode order.
class TabularScf {
 public:
  TabularScf(int q, std::size_t n, std::vector<std::uint8_t> winners);

  const ProfileSpace& space() const { return space_; }
  int alternatives() const { return space_.alternatives(); }
  std::size_t voters() const { return space_.voters(); }
  Alternative at(std::uint64_t code) const { return winners_[code]; }
  Alternative operator()(const Profile& x) const { return at(space_.encode(x)); }
  const std::vector<std::uint8_t>& winners() const { return winners_; }

  friend bool operator==(const TabularScf& a, const TabularScf& b) {
    return a.alternatives() == b.alternatives() && a.voters() == b.voters() &&
           a.winners_ == b.winners_;
  }

 private:
  ProfileSpace space_;
  std::vector<std::uint8_t> winners_;
};

class SocialChoiceFn {
 public:
  using Evaluator = std::function<Alternative(const Profile&)>;

  SocialChoiceFn(int q, std::size_t n, std::string name, Evaluator evaluator);
  static SocialChoiceFn from_table(std::shared_ptr<const TabularScf> table,
                                   std::string name = "tabular");

  int alternatives() const { return q_; }
  std::size_t voters() const { return n_; }
  const std::string& name() const { return name_; }
  // Non-null when the function is backed by a table.
  const std::shared_ptr<const TabularScf>& table() const { return table_; }

  // Checks dimensions and the output range.
  Alternative operator()(const Profile& x) const;
  // Skips the dimension check; for inner loops over known-good profiles.
  Alternative evaluate_unchecked(const Profile& x) const { return evaluator_(x); }

 private:
  int q_;
  std::size_t n_;
  std::string name_;
  Evaluator evaluator_;
  std::shared_ptr<const TabularScf> table_;
};

Alternative evaluate(const SocialChoiceFn& f, const Profile& x);

SocialChoiceFn constant(int q, std::size_t n, Alternative a);
// Top choice of `voter` (0-based).
SocialChoiceFn dictator_top(int q, std::size_t n, std::size_t voter);
// Most first places; ties go to the first voter (left to right) whose top is tied.
SocialChoiceFn plurality_leftmost(int q, std::size_t n);
// Position k earns q-k points; ties follow voter 0's ranking.
SocialChoiceFn borda_voter1_tiebreak(int q, std::size_t n);
SocialChoiceFn tabular(std::shared_ptr<const TabularScf> table);
// Uniformly random table.
SocialChoiceFn random_tabular(std::mt19937_64& rng, int q, std::size_t n);

// The table of f (shared if f is already tabular).
std::shared_ptr<const TabularScf> tabulate(const SocialChoiceFn& f, const Exact& mode = {});

// f with the coordinates in `fixed` pinned; the remaining coordinates keep
// their relative order. Throws DomainError if nothing would remain.
SocialChoiceFn restrict_coordinates(const SocialChoiceFn& f,
                                    const std::map<std::size_t, Ranking>& fixed);

struct NeutralityVerdict {
  bool neutral = true;
  std::uint64_t pairs_checked = 0;
  // Witness (y, x) with y(f(x)) != f(yx) when not neutral.
  std::optional<Ranking> relabeling;
  std::optional<Profile> profile;
};

NeutralityVerdict is_neutral(const SocialChoiceFn& f, const Exact& mode);
NeutralityVerdict is_neutral(const SocialChoiceFn& f, const Sampled& mode);

struct Distribution {
  std::vector<Rational> mu;  // mu[a-1] = P(f(X) = a)
};

struct SampledDistribution {
  std::vector<Estimate> mu;
};

Distribution distribution(const SocialChoiceFn& f, const Exact& mode = {});
SampledDistribution distribution(const SocialChoiceFn& f, const Sampled& mode);

// Values f attains.
std::vector<Alternative> image(const SocialChoiceFn& f, const Exact& mode = {});

Rational dist(const SocialChoiceFn& f, const SocialChoiceFn& g, const Exact& mode = {});
Rational dist_to_const(const SocialChoiceFn& f, const Exact& mode = {});
Rational dist_to_two_valued(const SocialChoiceFn& f, const Exact& mode = {});
// Distance to DICT_i: 1 - sum over sigma of max_a P(f(X)=a, X_i=sigma).
Rational dist_to_dict_coordinate(const SocialChoiceFn& f, std::size_t i, const Exact& mode = {});
Rational dist_to_dict(const SocialChoiceFn& f, const Exact& mode = {});
Rational dist_to_nonmanip(const SocialChoiceFn& f, const Exact& mode = {});

// Tabular file formats. Text: "q=<q> n=<n>" then one winner per line.
void write_tabular_text(std::ostream& out, const TabularScf& table);
TabularScf read_tabular_text(std::istream& in);
nlohmann::json tabular_to_json(const TabularScf& table);
TabularScf tabular_from_json(const nlohmann::json& j);
// Picks the format from the first non-space character ('{' means JSON).
TabularScf load_tabular_file(const std::string& path);
void save_tabular_file(const std::string& path, const TabularScf& table, bool json);

}  // namespace gslab

#include "gslab/paths.hpp"

#include <algorithm>
#include <numeric>

#include "gslab/errors.hpp"

namespace gslab {

std::string to_string(const ProfilePair& p) {
  return to_string(p.first) + " ; " + to_string(p.second);
}

std::vector<Ranking> relabelings_fixing(int q, const std::vector<Alternative>& fixed) {
  for (auto a : fixed)
    if (a < 1 || a > q) throw DomainError("fixed alternative out of range");
  std::vector<Alternative> moving;
  for (Alternative a = 1; a <= q; ++a)
    if (std::find(fixed.begin(), fixed.end(), a) == fixed.end()) moving.push_back(a);
  std::vector<Alternative> image = moving;
  std::vector<Ranking> out;
  do {
    std::vector<Alternative> p(static_cast<std::size_t>(q));
    std::iota(p.begin(), p.end(), 1);
    for (std::size_t k = 0; k < moving.size(); ++k)
      p[static_cast<std::size_t>(moving[k] - 1)] = image[k];
    out.push_back(Ranking::from_order(p));
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

GroupAction<Ranking> relabeling_action_rankings(int q, const std::vector<Alternative>& fixed) {
  return {"relabelings fixing " + std::to_string(fixed.size()) + " alternatives",
          relabelings_fixing(q, fixed),
          [](const Ranking& h, const Ranking& x) { return compose(h, x); }};
}

GroupAction<ProfilePair> relabeling_action_pairs(int q, const std::vector<Alternative>& fixed) {
  return {"relabelings fixing " + std::to_string(fixed.size()) + " alternatives",
          relabelings_fixing(q, fixed), [](const Ranking& h, const ProfilePair& x) {
            return ProfilePair{compose(h, x.first), compose(h, x.second)};
          }};
}

}  // namespace gslab

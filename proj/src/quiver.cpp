#include "ncalg/quiver.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace ncalg {

Quiver Quiver::make(std::vector<std::string> vertices,
                    std::vector<ArrowSpec> arrows) {
  Quiver q;
  if (vertices.empty())
    throw PreconditionError("quiver: need at least one vertex");
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].empty())
      throw PreconditionError("quiver: empty vertex name");
    if (!index.emplace(vertices[i], i).second)
      throw PreconditionError("quiver: duplicate vertex \"" + vertices[i] + "\"");
  }
  std::unordered_set<std::string> arrow_names;
  q.vertices_ = std::move(vertices);
  q.out_.assign(q.vertices_.size(), {});
  for (auto& a : arrows) {
    if (a.name.empty())
      throw PreconditionError("quiver: empty arrow name");
    if (!arrow_names.insert(a.name).second)
      throw PreconditionError("quiver: duplicate arrow \"" + a.name + "\"");
    const auto t = index.find(a.tail);
    const auto h = index.find(a.head);
    if (t == index.end())
      throw PreconditionError("quiver: arrow \"" + a.name +
                              "\" has undeclared tail \"" + a.tail + "\"");
    if (h == index.end())
      throw PreconditionError("quiver: arrow \"" + a.name +
                              "\" has undeclared head \"" + a.head + "\"");
    q.out_[t->second].push_back(q.arrows_.size());
    q.arrows_.push_back(Arrow{std::move(a.name), t->second, h->second});
  }

  /* Kahn's algorithm; leftovers witness a directed cycle. */
  std::vector<std::size_t> indeg(q.vertices_.size(), 0);
  for (const auto& a : q.arrows_) ++indeg[a.head];
  std::vector<std::size_t> stack;
  for (std::size_t v = 0; v < indeg.size(); ++v)
    if (indeg[v] == 0) stack.push_back(v);
  std::size_t seen = 0;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    ++seen;
    for (const std::size_t a : q.out_[v])
      if (--indeg[q.arrows_[a].head] == 0) stack.push_back(q.arrows_[a].head);
  }
  if (seen != q.vertices_.size())
    throw CyclicQuiverError("quiver contains a directed cycle");
  return q;
}

std::size_t Quiver::vertex_index(const std::string& name) const {
  const auto it = std::find(vertices_.begin(), vertices_.end(), name);
  if (it == vertices_.end())
    throw PreconditionError("quiver: unknown vertex \"" + name + "\"");
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::vector<std::vector<std::size_t>> Quiver::paths(std::size_t x,
                                                    std::size_t y) const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  /* acyclicity bounds the recursion by the vertex count */
  auto dfs = [&](auto&& self, std::size_t v) -> void {
    if (v == y) out.push_back(cur);
    for (const std::size_t a : out_[v]) {
      cur.push_back(a);
      self(self, arrows_[a].head);
      cur.pop_back();
    }
  };
  dfs(dfs, x);
  return out;
}

std::uint64_t Quiver::path_count(std::size_t x, std::size_t y) const {
  /* memoized count; acyclicity means a path ends the first time it hits y */
  std::vector<std::int64_t> memo(vertices_.size(), -1);
  auto count = [&](auto&& self, std::size_t v) -> std::uint64_t {
    if (v == y) return 1;
    if (memo[v] >= 0) return static_cast<std::uint64_t>(memo[v]);
    std::uint64_t total = 0;
    for (const std::size_t a : out_[v]) total += self(self, arrows_[a].head);
    memo[v] = static_cast<std::int64_t>(total);
    return total;
  };
  return count(count, x);
}

}  // namespace ncalg

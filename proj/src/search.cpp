#include "regaff/search.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "regaff/verify.hpp"

namespace regaff {

namespace {

// Hard caps on the tabulated search space.  The required cells have
// q^n <= 64; the stretch cells stay well inside these.
constexpr size_t kMaxPoints = 1024;      // q^n
constexpr size_t kMaxCandidates = 1024;  // |U_n(q)| = q^(n(n-1)/2)

uint64_t checked_pow(uint64_t q, size_t e, size_t cap, const char* what) {
  uint64_t r = 1;
  for (size_t i = 0; i < e; ++i) {
    r *= q;
    if (r > cap) throw std::invalid_argument(std::string(what) + " too large for search");
  }
  return r;
}

/// Precomputed index tables.  Points are the vectors of F^n in
/// lexicographic order on coordinate tuples (first coordinate most
/// significant, field elements ordered by canonical index); candidates are
/// the upper unitriangular matrices in lexicographic order on the
/// strictly-upper entries read row-major.  The identity is candidate 0.
struct Tables {
  const Field* f = nullptr;
  size_t n = 0;
  uint32_t num_points = 0;
  uint32_t num_cands = 0;
  std::vector<Vec> points;
  std::vector<Mat> cands;
  std::vector<uint16_t> add;   // [a * P + b] -> index of points[a] + points[b]
  std::vector<uint16_t> act;   // [c * P + p] -> index of points[p] * cands[c]
  std::vector<uint16_t> prod;  // [c * C + d] -> index of cands[c] * cands[d]

  uint32_t point_index(const Vec& v) const {
    uint64_t q = f->order();
    uint64_t idx = 0;
    for (size_t j = 0; j < n; ++j) idx = idx * q + f->index_of(v[j]);
    return uint32_t(idx);
  }
  uint32_t cand_index(const Mat& m) const {
    uint64_t q = f->order();
    uint64_t idx = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) idx = idx * q + f->index_of(m(i, j));
    return uint32_t(idx);
  }
};

Tables build_tables(size_t n, const Field& f) {
  if (!f.is_finite()) throw std::invalid_argument("search requires a finite field");
  if (n == 0) throw std::invalid_argument("search requires n >= 1");
  uint64_t q = f.order();
  uint64_t p_count = checked_pow(q, n, kMaxPoints, "q^n");
  uint64_t c_count = checked_pow(q, n * (n - 1) / 2, kMaxCandidates, "q^(n(n-1)/2)");

  Tables t;
  t.f = &f;
  t.n = n;
  t.num_points = uint32_t(p_count);
  t.num_cands = uint32_t(c_count);

  t.points.reserve(p_count);
  for (uint64_t i = 0; i < p_count; ++i) {
    Vec v(f, n);
    uint64_t rest = i;
    for (size_t j = n; j-- > 0;) {
      v[j] = f.element(rest % q);
      rest /= q;
    }
    t.points.push_back(std::move(v));
  }

  t.cands.reserve(c_count);
  for (uint64_t ci = 0; ci < c_count; ++ci) {
    Mat m = Mat::identity(f, n);
    uint64_t rest = ci;
    for (size_t i = n; i-- > 0;)
      for (size_t j = n; j-- > i + 1;) {
        m(i, j) = f.element(rest % q);
        rest /= q;
      }
    t.cands.push_back(std::move(m));
  }

  t.add.resize(p_count * p_count);
  for (uint64_t a = 0; a < p_count; ++a)
    for (uint64_t b = 0; b < p_count; ++b)
      t.add[a * p_count + b] = uint16_t(t.point_index(t.points[a] + t.points[b]));

  t.act.resize(c_count * p_count);
  for (uint64_t c = 0; c < c_count; ++c)
    for (uint64_t p = 0; p < p_count; ++p)
      t.act[c * p_count + p] = uint16_t(t.point_index(t.points[p] * t.cands[c]));

  t.prod.resize(c_count * c_count);
  for (uint64_t c = 0; c < c_count; ++c)
    for (uint64_t d = 0; d < c_count; ++d)
      t.prod[c * c_count + d] = uint16_t(t.cand_index(t.cands[c] * t.cands[d]));

  return t;
}

std::string points_line(const Tables& t) {
  std::string s;
  for (uint32_t i = 0; i < t.num_points; ++i) {
    if (i) s += ';';
    s += t.points[i].encode();
  }
  return s;
}

struct Frame {
  uint32_t point;
  int32_t cand;                 // candidate currently placed; -1 = none yet
  std::vector<uint32_t> trail;  // points assigned by placing it
};

/// Depth-first enumeration of total maps A: F^n -> U_n(q) with A(0) = I
/// that satisfy the closure law in both orders.  Assigning one point
/// propagates to a fixpoint: for every newly defined u and every defined w,
/// the products (u,A(u))(w,A(w)) and (w,A(w))(u,A(u)) force the map at
/// w + u.A(w) and u + w.A(u).  A contradiction prunes the branch.
class Dfs {
 public:
  Dfs(const Tables& t, SearchMode mode, uint64_t budget)
      : t_(t), mode_(mode), budget_(budget), assign_(t.num_points, -1) {
    id_cand_ = t_.cand_index(Mat::identity(*t_.f, t_.n));
    if (id_cand_ != 0) throw std::logic_error("identity must be candidate 0");
  }

  // Root-branch restriction for worker threads: when non-empty, the first
  // decision point only tries candidates c with mask[c] != 0.
  std::vector<uint8_t> root_mask;

  void seed_root() {
    std::vector<uint32_t> tr;
    if (!place_and_close(0, id_cand_, tr)) throw std::logic_error("root placement failed");
    // The root assignment A(0) = I is permanent, never undone.
  }

  void run(bool resumed) {
    if (resumed && !advance()) return;
    while (true) {
      uint32_t p = first_undefined();
      if (p == t_.num_points) {
        record();
        if (!advance()) return;
        continue;
      }
      stack_.push_back(Frame{p, -1, {}});
      if (!advance()) return;
    }
  }

  // --- resume support -------------------------------------------------

  /// Re-applies a checkpointed decision; throws if it no longer fits.
  void replay_frame(uint32_t point, uint32_t cand) {
    if (point != first_undefined()) throw std::runtime_error("checkpoint: frame point out of order");
    if (cand >= t_.num_cands) throw std::runtime_error("checkpoint: candidate index out of range");
    Frame fr{point, int32_t(cand), {}};
    if (!place_and_close(point, cand, fr.trail))
      throw std::runtime_error("checkpoint: frame no longer consistent");
    stack_.push_back(std::move(fr));
  }

  void prepare_next(uint32_t point, uint32_t cand) {
    if (point != first_undefined()) throw std::runtime_error("checkpoint: next point out of order");
    stack_.push_back(Frame{point, int32_t(cand) - 1, {}});
  }

  void seed_found(std::vector<int32_t> snapshot) {
    if (snapshot.size() != t_.num_points) throw std::runtime_error("checkpoint: bad group size");
    for (int32_t c : snapshot)
      if (c < 0 || uint32_t(c) >= t_.num_cands)
        throw std::runtime_error("checkpoint: group candidate out of range");
    found.push_back(std::move(snapshot));
  }

  // --- results ---------------------------------------------------------

  std::vector<std::vector<int32_t>> found;  // total-map snapshots
  uint64_t nodes = 0;  // cumulative across resumes; the budget meters this run only
  bool complete = true;
  std::string checkpoint_text;

 private:
  uint32_t first_undefined() const {
    for (uint32_t p = 0; p < t_.num_points; ++p)
      if (assign_[p] < 0) return p;
    return t_.num_points;
  }

  bool place(uint32_t p, uint32_t c, std::vector<uint32_t>& trail) {
    if (assign_[p] >= 0) return uint32_t(assign_[p]) == c;
    if (mode_ == SearchMode::find_translation_free && p != 0 && c == id_cand_) return false;
    assign_[p] = int32_t(c);
    trail.push_back(p);
    defined_.push_back(p);
    return true;
  }

  bool place_and_close(uint32_t p, uint32_t c, std::vector<uint32_t>& trail) {
    const size_t start = trail.size();
    if (!place(p, c, trail)) return false;
    const size_t P = t_.num_points, C = t_.num_cands;
    for (size_t head = start; head < trail.size(); ++head) {
      const uint32_t u = trail[head];
      const uint32_t cu = uint32_t(assign_[u]);
      for (size_t i = 0; i < defined_.size(); ++i) {  // defined_ grows as we place
        const uint32_t w = defined_[i];
        const uint32_t cw = uint32_t(assign_[w]);
        // (u,A(u))(w,A(w)) = (w + u.A(w), A(u)A(w))
        const uint32_t t1 = t_.add[size_t(w) * P + t_.act[size_t(cw) * P + u]];
        if (!place(t1, t_.prod[size_t(cu) * C + cw], trail)) return false;
        // (w,A(w))(u,A(u)) = (u + w.A(u), A(w)A(u))
        const uint32_t t2 = t_.add[size_t(u) * P + t_.act[size_t(cu) * P + w]];
        if (!place(t2, t_.prod[size_t(cw) * C + cu], trail)) return false;
      }
    }
    return true;
  }

  void undo(std::vector<uint32_t>& trail) {
    for (uint32_t p : trail) assign_[p] = -1;
    defined_.resize(defined_.size() - trail.size());
    trail.clear();
  }

  void record() { found.push_back(assign_); }

  /// Moves the top frame to its next workable candidate, popping exhausted
  /// frames.  False when the stack empties (done) or the budget runs out
  /// (checkpoint written, complete = false).
  bool advance() {
    while (!stack_.empty()) {
      Frame& fr = stack_.back();
      undo(fr.trail);
      const bool at_root = stack_.size() == 1;
      for (uint32_t c = uint32_t(fr.cand + 1); c < t_.num_cands; ++c) {
        if (at_root && !root_mask.empty() && !root_mask[c]) continue;
        if (spent_ >= budget_) {
          stop_with_checkpoint(fr.point, c);
          return false;
        }
        ++nodes;
        ++spent_;
        std::vector<uint32_t> tr;
        if (place_and_close(fr.point, c, tr)) {
          fr.cand = int32_t(c);
          fr.trail = std::move(tr);
          return true;
        }
        undo(tr);
      }
      stack_.pop_back();
    }
    return false;
  }

  void stop_with_checkpoint(uint32_t next_point, uint32_t next_cand) {
    complete = false;
    std::ostringstream out;
    out << "REGAFF v1\n";
    out << "CHECKPOINT search\n";
    out << t_.f->header_line() << "\n";
    out << "N " << t_.n << "\n";
    out << "MODE " << search_mode_name(mode_) << "\n";
    out << "NODES " << nodes << "\n";
    out << "POINTS " << points_line(t_) << "\n";
    for (const auto& snap : found) {
      out << "GROUP ";
      for (size_t i = 0; i < snap.size(); ++i) out << (i ? "," : "") << snap[i];
      out << "\n";
    }
    for (size_t i = 0; i + 1 < stack_.size(); ++i)
      out << "FRAME " << stack_[i].point << " " << stack_[i].cand << "\n";
    out << "NEXT " << next_point << " " << next_cand << "\n";
    out << "END\n";
    checkpoint_text = out.str();
  }

  const Tables& t_;
  SearchMode mode_;
  uint64_t budget_;
  uint64_t spent_ = 0;
  uint32_t id_cand_;
  std::vector<int32_t> assign_;
  std::vector<uint32_t> defined_;
  std::vector<Frame> stack_;
};

/// Parses a checkpoint and loads it into a fresh Dfs.
void load_checkpoint(Dfs& dfs, const Tables& t, SearchMode mode, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto next = [&]() {
    if (!std::getline(in, line)) throw std::runtime_error("checkpoint: truncated");
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };
  auto expect = [&](const std::string& want) {
    next();
    if (line != want) throw std::runtime_error("checkpoint: expected `" + want + "`");
  };
  expect("REGAFF v1");
  expect("CHECKPOINT search");
  next();
  const Field* ckf = nullptr;
  try {
    ckf = &Field::parse_header(line);
  } catch (const std::exception& e) {
    throw std::runtime_error("checkpoint: " + std::string(e.what()));
  }
  if (ckf != t.f) throw std::runtime_error("checkpoint: field mismatch");
  expect("N " + std::to_string(t.n));
  expect("MODE " + std::string(search_mode_name(mode)));
  next();
  if (!line.starts_with("NODES ")) throw std::runtime_error("checkpoint: missing NODES");
  dfs.nodes = std::stoull(line.substr(6));
  expect("POINTS " + points_line(t));

  dfs.seed_root();
  bool saw_next = false;
  while (true) {
    next();
    if (line.starts_with("GROUP ")) {
      std::vector<int32_t> snap;
      std::istringstream gs(line.substr(6));
      std::string tok;
      while (std::getline(gs, tok, ',')) snap.push_back(int32_t(std::stol(tok)));
      dfs.seed_found(std::move(snap));
    } else if (line.starts_with("FRAME ")) {
      std::istringstream fs(line.substr(6));
      uint32_t p, c;
      if (!(fs >> p >> c)) throw std::runtime_error("checkpoint: bad FRAME");
      dfs.replay_frame(p, c);
    } else if (line.starts_with("NEXT ")) {
      std::istringstream fs(line.substr(5));
      uint32_t p, c;
      if (!(fs >> p >> c)) throw std::runtime_error("checkpoint: bad NEXT");
      dfs.prepare_next(p, c);
      saw_next = true;
    } else if (line == "END") {
      break;
    } else {
      throw std::runtime_error("checkpoint: unexpected line `" + line + "`");
    }
  }
  if (!saw_next) throw std::runtime_error("checkpoint: missing NEXT");
}

bool snapshot_translation_free(const Tables& t, const std::vector<int32_t>& snap) {
  for (uint32_t p = 1; p < t.num_points; ++p)
    if (snap[p] == 0) return false;  // identity linear part at a nonzero point
  return true;
}

std::vector<AffineElem> materialize(const Tables& t, const std::vector<int32_t>& snap) {
  std::vector<AffineElem> out;
  out.reserve(t.num_points);
  for (uint32_t p = 0; p < t.num_points; ++p)
    out.push_back(AffineElem::make(t.points[p], t.cands[size_t(snap[p])]));
  return out;
}

}  // namespace

std::string_view search_mode_name(SearchMode m) {
  switch (m) {
    case SearchMode::enumerate_all: return "enumerate_all";
    case SearchMode::find_translation_free: return "find_translation_free";
  }
  throw std::logic_error("bad SearchMode");
}

SearchMode search_mode_from(std::string_view name) {
  if (name == "enumerate_all") return SearchMode::enumerate_all;
  if (name == "find_translation_free") return SearchMode::find_translation_free;
  throw std::invalid_argument("unknown search mode `" + std::string(name) + "`");
}

SearchResult search_regular(size_t n, const Field& f, SearchMode mode,
                            const SearchOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  Tables t = build_tables(n, f);

  SearchResult res;
  res.mode = mode;

  std::vector<std::vector<int32_t>> snapshots;
  if (opts.threads <= 1) {
    Dfs dfs(t, mode, opts.node_budget);
    if (opts.resume) {
      load_checkpoint(dfs, t, mode, *opts.resume);
      dfs.run(/*resumed=*/true);
    } else {
      dfs.seed_root();
      dfs.run(/*resumed=*/false);
    }
    res.nodes = dfs.nodes;
    res.complete = dfs.complete;
    res.checkpoint = std::move(dfs.checkpoint_text);
    snapshots = std::move(dfs.found);
  } else {
    if (opts.resume) throw std::invalid_argument("resume requires threads = 1");
    const unsigned workers = std::min<unsigned>(opts.threads, t.num_cands);
    std::vector<Dfs> jobs;
    jobs.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      jobs.emplace_back(t, mode, opts.node_budget);
      jobs.back().root_mask.assign(t.num_cands, 0);
      for (uint32_t c = w; c < t.num_cands; c += workers) jobs.back().root_mask[c] = 1;
    }
    {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (Dfs& job : jobs)
        pool.emplace_back([&job] {
          job.seed_root();
          job.run(/*resumed=*/false);
        });
      for (std::thread& th : pool) th.join();
    }
    for (Dfs& job : jobs) {
      res.nodes += job.nodes;
      res.complete = res.complete && job.complete;  // no merged checkpoint
      for (auto& snap : job.found) snapshots.push_back(std::move(snap));
    }
  }

  // Canonical output order, independent of thread count.
  std::sort(snapshots.begin(), snapshots.end());

  for (const auto& snap : snapshots) {
    const bool tf = snapshot_translation_free(t, snap);
    std::vector<AffineElem> elems = materialize(t, snap);
    // Defense in depth: everything reported must independently verify.
    std::string witness;
    if (!check_regular(elems, f, n, &witness))
      throw std::logic_error("search produced a non-regular set: " + witness);
    if (closure_witness(elems))
      throw std::logic_error("search produced a non-closed set");
    if (tf != (translation_subgroup(elems).size() == 1))
      throw std::logic_error("search misclassified a translation intersection");
    ++res.regular_count;
    if (tf) ++res.translation_free_count;
    if (mode == SearchMode::enumerate_all || tf) res.groups.push_back(std::move(elems));
  }

  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

SearchResult naive_oracle(size_t n, const Field& f) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!f.is_finite()) throw std::invalid_argument("naive_oracle requires a finite field");
  const uint64_t q = f.order();
  const bool supported = (n == 1 && (q == 2 || q == 3)) || (n == 2 && q == 2);
  if (!supported)
    throw std::invalid_argument("naive_oracle supports (n, q) in {(1,2), (1,3), (2,2)} only");

  // Every element of AGL_n(q), by brute force over all matrices.
  uint64_t target = 1;
  for (size_t i = 0; i < n; ++i) target *= q;
  std::vector<Mat> gl;
  const size_t entries = n * n;
  uint64_t total = 1;
  for (size_t i = 0; i < entries; ++i) total *= q;
  for (uint64_t code = 0; code < total; ++code) {
    Mat m(f, n, n);
    uint64_t rest = code;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        m(i, j) = f.element(rest % q);
        rest /= q;
      }
    if (!m.det().is_zero()) gl.push_back(std::move(m));
  }
  std::vector<AffineElem> agl;
  for (const Mat& a : gl)
    for (uint64_t vi = 0; vi < target; ++vi) {
      Vec v(f, n);
      uint64_t rest = vi;
      for (size_t j = 0; j < n; ++j) {
        v[j] = f.element(rest % q);
        rest /= q;
      }
      agl.push_back(AffineElem::make(v, a));
    }

  // Closures of all 1- and 2-element subsets.  Complete for order q^n <= 4:
  // every group that small is generated by at most two elements.
  SearchResult res;
  res.mode = SearchMode::enumerate_all;
  std::set<std::string> seen;
  for (size_t i = 0; i < agl.size(); ++i)
    for (size_t j = i; j < agl.size(); ++j) {
      ++res.nodes;
      std::vector<AffineElem> cl;
      try {
        cl = close_group({agl[i], agl[j]}, target);
      } catch (const std::runtime_error&) {
        continue;  // closure exceeds q^n: not regular
      }
      if (cl.size() != target || !check_regular(cl, f, n)) continue;
      std::sort(cl.begin(), cl.end());
      std::string key;
      for (const AffineElem& g : cl) key += g.matrix().encode() + "|";
      if (!seen.insert(key).second) continue;
      ++res.regular_count;
      if (translation_subgroup(cl).size() == 1) ++res.translation_free_count;
      res.groups.push_back(std::move(cl));
    }
  res.complete = true;
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace regaff

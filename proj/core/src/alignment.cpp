#include "lceval/alignment.hpp"

#include <algorithm>
#include <cmath>

#include "lceval/errors.hpp"
#include "lceval/unicode.hpp"

namespace lceval::deptree {

const char* to_string(PairKind kind) {
  switch (kind) {
    case PairKind::exact: return "exact";
    case PairKind::split: return "split";
    case PairKind::merge: return "merge";
  }
  return "?";
}

std::optional<int> AlignmentMap::pred_for_gold(int gold_index) const {
  for (const AlignedPair& p : pairs)
    if (p.gold_index == gold_index) return p.pred_index;
  return std::nullopt;
}

namespace {

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
};

struct Stream {
  std::u32string chars;
  std::vector<Span> spans;  // one per token, code-point offsets
};

Stream build_stream(const std::vector<std::string>& forms) {
  Stream s;
  for (const std::string& form : forms) {
    std::u32string cps = uni::compose_latin(uni::to_u32(form));
    std::size_t begin = s.chars.size();
    for (char32_t cp : cps)
      if (!uni::is_space(cp)) s.chars.push_back(cp);
    s.spans.push_back({begin, s.chars.size()});
  }
  return s;
}

// For each pred character, the gold character it corresponds to along a
// minimal edit script (match or substitution), or nullopt for pred-only
// insertions. Gold-only characters correspond to nothing, so a dropped
// token leaves its gold span uncovered instead of widening a neighbour.
std::vector<std::optional<std::size_t>> project_chars(
    const std::u32string& gold, const std::u32string& pred,
    double budget_fraction) {
  const std::size_t n = gold.size(), m = pred.size();
  std::vector<std::vector<unsigned>> d(n + 1, std::vector<unsigned>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = static_cast<unsigned>(i);
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = static_cast<unsigned>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      unsigned sub = d[i - 1][j - 1] + (gold[i - 1] == pred[j - 1] ? 0u : 1u);
      d[i][j] = std::min({sub, d[i - 1][j] + 1, d[i][j - 1] + 1});
    }
  }
  const double limit =
      budget_fraction * static_cast<double>(std::max(n, m));
  if (static_cast<double>(d[n][m]) > limit)
    throw Error(ErrorKind::Unalignable,
                "character streams differ by " + std::to_string(d[n][m]) +
                    " edits over " + std::to_string(std::max(n, m)) +
                    " characters (budget " + std::to_string(limit) + ")");

  // Backtrace into an op list, preferring matches/substitutions so the
  // projected spans keep as much width as possible.
  std::vector<char> ops;
  std::size_t bi = n, bj = m;
  while (bi > 0 || bj > 0) {
    if (bi > 0 && bj > 0 &&
        d[bi][bj] ==
            d[bi - 1][bj - 1] + (gold[bi - 1] == pred[bj - 1] ? 0u : 1u)) {
      ops.push_back('M');
      --bi;
      --bj;
    } else if (bj > 0 && d[bi][bj] == d[bi][bj - 1] + 1) {
      ops.push_back('I');  // pred-only character
      --bj;
    } else {
      ops.push_back('D');  // gold-only character
      --bi;
    }
  }
  std::reverse(ops.begin(), ops.end());

  std::vector<std::optional<std::size_t>> match(m);
  std::size_t gi = 0, pj = 0;
  for (char op : ops) {
    if (op == 'M') {
      match[pj] = gi;
      ++gi;
      ++pj;
    } else if (op == 'I') {
      ++pj;
    } else {
      ++gi;
    }
  }
  return match;
}

}  // namespace

AlignmentMap align_tokens(const std::vector<std::string>& gold_forms,
                          const std::vector<std::string>& pred_forms,
                          const AlignOptions& options) {
  if (gold_forms.empty() || pred_forms.empty())
    throw Error(ErrorKind::Unalignable, "empty token sequence");

  Stream gold = build_stream(gold_forms);
  Stream pred = build_stream(pred_forms);
  if (gold.chars.empty() || pred.chars.empty())
    throw Error(ErrorKind::Unalignable, "token sequence has no characters");

  std::vector<Span> pred_spans = pred.spans;
  if (gold.chars != pred.chars) {
    std::vector<std::optional<std::size_t>> match = project_chars(
        gold.chars, pred.chars, options.edit_budget_fraction);
    for (Span& s : pred_spans) {
      std::optional<std::size_t> lo, hi;
      for (std::size_t c = s.begin; c < s.end; ++c) {
        if (!match[c]) continue;
        if (!lo) lo = *match[c];
        hi = *match[c] + 1;
      }
      s = lo ? Span{*lo, *hi} : Span{0, 0};
    }
  }

  const std::size_t ng = gold.spans.size(), np = pred_spans.size();
  auto overlap = [&](std::size_t gi, std::size_t pj) -> std::size_t {
    const Span& a = gold.spans[gi];
    const Span& b = pred_spans[pj];
    std::size_t lo = std::max(a.begin, b.begin);
    std::size_t hi = std::min(a.end, b.end);
    return hi > lo ? hi - lo : 0;
  };

  // Number of gold tokens each predicted token overlaps (for merge kind).
  std::vector<int> golds_hit(np, 0);
  {
    std::size_t gi = 0;
    for (std::size_t pj = 0; pj < np; ++pj) {
      while (gi < ng && gold.spans[gi].end <= pred_spans[pj].begin) ++gi;
      for (std::size_t k = gi; k < ng && gold.spans[k].begin < pred_spans[pj].end;
           ++k)
        if (overlap(k, pj) > 0) ++golds_hit[pj];
    }
  }

  AlignmentMap map;
  std::vector<bool> pred_used(np, false);
  std::size_t pj_start = 0;
  for (std::size_t gi = 0; gi < ng; ++gi) {
    while (pj_start < np && pred_spans[pj_start].end <= gold.spans[gi].begin)
      ++pj_start;
    std::size_t best = np;
    std::size_t best_overlap = 0;
    for (std::size_t pj = pj_start;
         pj < np && pred_spans[pj].begin < gold.spans[gi].end; ++pj) {
      std::size_t ov = overlap(gi, pj);
      if (ov > best_overlap) {
        best_overlap = ov;
        best = pj;
      }
    }
    if (best == np) {
      map.unmatched_gold.push_back(static_cast<int>(gi) + 1);
      continue;
    }
    PairKind kind;
    if (golds_hit[best] >= 2) {
      kind = PairKind::merge;
    } else if (gold.spans[gi].begin == pred_spans[best].begin &&
               gold.spans[gi].end == pred_spans[best].end) {
      kind = PairKind::exact;
    } else {
      kind = PairKind::split;
    }
    map.pairs.push_back(
        {static_cast<int>(gi) + 1, static_cast<int>(best) + 1, kind});
    pred_used[best] = true;
  }
  for (std::size_t pj = 0; pj < np; ++pj)
    if (!pred_used[pj]) map.unmatched_pred.push_back(static_cast<int>(pj) + 1);
  return map;
}

}  // namespace lceval::deptree

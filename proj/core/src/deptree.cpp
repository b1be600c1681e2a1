#include "lceval/deptree.hpp"

#include <charconv>
#include <cstdlib>
#include <set>
#include <sstream>

#include "lceval/errors.hpp"

namespace lceval::deptree {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::MultipleRoots: return "multiple-roots";
    case ViolationKind::NoRoot: return "no-root";
    case ViolationKind::HeadOutOfRange: return "head-out-of-range";
    case ViolationKind::DuplicatedIndex: return "duplicated-index";
  }
  return "?";
}

int GoldTree::root_index() const {
  for (const DepNode& n : nodes)
    if (n.head == 0) return n.index;
  return 0;
}

PredictedTree make_predicted(std::vector<DepNode> nodes) {
  PredictedTree tree;
  tree.nodes = std::move(nodes);
  const int n = static_cast<int>(tree.nodes.size());
  std::set<int> seen;
  int roots = 0;
  for (const DepNode& node : tree.nodes) {
    if (!seen.insert(node.index).second) {
      tree.violations.push_back({ViolationKind::DuplicatedIndex, node.index,
                                 "index " + std::to_string(node.index) +
                                     " appears more than once"});
    }
    if (node.head == 0) {
      ++roots;
    } else if (node.head < 0 || node.head > n) {
      tree.violations.push_back({ViolationKind::HeadOutOfRange, node.index,
                                 "head " + std::to_string(node.head) +
                                     " outside [0, " + std::to_string(n) +
                                     "]"});
    }
  }
  if (n > 0 && roots == 0)
    tree.violations.push_back({ViolationKind::NoRoot, 0, "no node has head 0"});
  if (roots > 1)
    tree.violations.push_back({ViolationKind::MultipleRoots, 0,
                               std::to_string(roots) + " nodes have head 0"});
  return tree;
}

namespace {

AddResult add_over(const std::vector<DepNode>& nodes, AddConvention convention,
                   bool clamp_out_of_range) {
  if (nodes.empty())
    throw Error(ErrorKind::EmptyTree, "cannot compute ADD of an empty tree");
  const int n = static_cast<int>(nodes.size());
  AddResult r;
  r.convention = convention;
  r.word_count = n;
  for (const DepNode& node : nodes) {
    if (node.head == 0) {
      if (convention == AddConvention::root_index) r.sum_distance += node.index;
    } else if (clamp_out_of_range && (node.head < 0 || node.head > n)) {
      // recorded as a violation at construction; contributes no distance
    } else {
      r.sum_distance += std::abs(node.index - node.head);
    }
  }
  r.add = static_cast<double>(r.sum_distance) / static_cast<double>(r.word_count);
  return r;
}

}  // namespace

AddResult compute_add(const GoldTree& tree, AddConvention convention) {
  return add_over(tree.nodes, convention, false);
}

AddResult compute_add(const PredictedTree& tree, AddConvention convention) {
  return add_over(tree.nodes, convention, true);
}

namespace {

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool is_skippable_id(std::string_view id) {
  // multiword ranges "1-2" and empty nodes "1.1"
  return id.find('-') != std::string_view::npos ||
         id.find('.') != std::string_view::npos;
}

void finish_sentence(std::vector<DepNode>& nodes, std::string& sent_id,
                     int first_line, std::vector<GoldTree>& out) {
  if (nodes.empty()) return;
  const int n = static_cast<int>(nodes.size());
  int roots = 0;
  for (const DepNode& node : nodes) {
    if (node.head == 0) ++roots;
    if (node.head < 0 || node.head > n)
      throw Error(ErrorKind::NonTree,
                  "head " + std::to_string(node.head) + " of node " +
                      std::to_string(node.index) + " out of range",
                  first_line);
  }
  if (roots != 1)
    throw Error(ErrorKind::NonTree,
                "sentence has " + std::to_string(roots) + " root nodes",
                first_line);
  // cycle check: walk up from every node
  for (const DepNode& node : nodes) {
    int steps = 0, cur = node.index;
    while (cur != 0) {
      cur = nodes[static_cast<std::size_t>(cur) - 1].head;
      if (++steps > n)
        throw Error(ErrorKind::NonTree,
                    "cycle through node " + std::to_string(node.index),
                    first_line);
    }
  }
  GoldTree tree;
  tree.nodes = std::move(nodes);
  tree.sentence_id =
      sent_id.empty() ? "s" + std::to_string(out.size() + 1) : sent_id;
  out.push_back(std::move(tree));
  nodes.clear();
  sent_id.clear();
}

}  // namespace

std::vector<GoldTree> parse_conllu(std::string_view text) {
  std::vector<GoldTree> out;
  std::vector<DepNode> nodes;
  std::string sent_id;
  int line_no = 0;
  int first_line = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = eol == std::string_view::npos
                                ? text.substr(pos)
                                : text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;

    if (line.empty()) {
      finish_sentence(nodes, sent_id, first_line, out);
    } else if (line.front() == '#') {
      std::string_view c = line.substr(1);
      std::size_t eq = c.find('=');
      if (eq != std::string_view::npos) {
        auto trim = [](std::string_view v) {
          while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
          while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
          return v;
        };
        if (trim(c.substr(0, eq)) == "sent_id")
          sent_id = std::string(trim(c.substr(eq + 1)));
      }
    } else {
      std::vector<std::string_view> cols;
      std::size_t p = 0;
      while (true) {
        std::size_t tab = line.find('\t', p);
        if (tab == std::string_view::npos) {
          cols.push_back(line.substr(p));
          break;
        }
        cols.push_back(line.substr(p, tab - p));
        p = tab + 1;
      }
      if (cols.size() != 10)
        throw Error(ErrorKind::MalformedLine,
                    "expected 10 tab-separated columns, got " +
                        std::to_string(cols.size()),
                    line_no);
      if (!is_skippable_id(cols[0])) {
        DepNode node;
        if (!parse_int(cols[0], node.index))
          throw Error(ErrorKind::MalformedLine,
                      "ID column is not an integer: '" + std::string(cols[0]) +
                          "'",
                      line_no);
        if (nodes.empty()) first_line = line_no;
        if (node.index != static_cast<int>(nodes.size()) + 1)
          throw Error(ErrorKind::MalformedLine,
                      "ID " + std::string(cols[0]) + " breaks 1..n contiguity",
                      line_no);
        node.form = std::string(cols[1]);
        node.pos = cols[3] == "_" ? std::string() : std::string(cols[3]);
        if (!parse_int(cols[6], node.head))
          throw Error(ErrorKind::MalformedLine,
                      "HEAD column is not an integer: '" +
                          std::string(cols[6]) + "'",
                      line_no);
        nodes.push_back(std::move(node));
      }
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  finish_sentence(nodes, sent_id, first_line, out);
  return out;
}

std::string serialize_conllu(const GoldTree& tree) {
  std::ostringstream os;
  os << "# sent_id = " << tree.sentence_id << "\n";
  for (const DepNode& n : tree.nodes) {
    os << n.index << '\t' << n.form << "\t_\t" << (n.pos.empty() ? "_" : n.pos)
       << "\t_\t_\t" << n.head << "\t_\t_\t_\n";
  }
  return os.str();
}

std::vector<std::string> forms_of(const std::vector<DepNode>& nodes) {
  std::vector<std::string> forms;
  forms.reserve(nodes.size());
  for (const DepNode& n : nodes) forms.push_back(n.form);
  return forms;
}

}  // namespace lceval::deptree

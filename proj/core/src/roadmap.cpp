#include "rsec/roadmap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "rsec/errors.hpp"
#include "rsec/io.hpp"

namespace rsec {

namespace {

auto lower_bound_id(std::vector<Neighbor>& adj, VertexId id) {
    return std::lower_bound(adj.begin(), adj.end(), id,
                            [](const Neighbor& n, VertexId key) { return n.id < key; });
}

auto lower_bound_id(const std::vector<Neighbor>& adj, VertexId id) {
    return std::lower_bound(adj.begin(), adj.end(), id,
                            [](const Neighbor& n, VertexId key) { return n.id < key; });
}

}  // namespace

Roadmap::Roadmap(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw UsageError("roadmap dimension must be positive");
}

void Roadmap::check_config(const Configuration& q) const {
    if (q.size() != dim_) throw UsageError("configuration dimension does not match roadmap");
    for (double x : q) {
        if (!std::isfinite(x)) throw UsageError("configuration coordinates must be finite");
    }
}

const Roadmap::Node& Roadmap::node(VertexId v) const {
    if (v >= nodes_.size() || !nodes_[v]) throw UsageError("unknown vertex id " + std::to_string(v));
    return *nodes_[v];
}

Roadmap::Node& Roadmap::node(VertexId v) {
    if (v >= nodes_.size() || !nodes_[v]) throw UsageError("unknown vertex id " + std::to_string(v));
    return *nodes_[v];
}

VertexId Roadmap::add_vertex(Configuration config, std::vector<Configuration> ancestors) {
    check_config(config);
    if (nodes_.size() >= std::numeric_limits<VertexId>::max()) throw UsageError("vertex id space exhausted");
    const auto id = static_cast<VertexId>(nodes_.size());
    nodes_.emplace_back(Node{VertexRecord{std::move(config), std::move(ancestors)}, {}});
    ++vertex_count_;
    return id;
}

void Roadmap::remove_vertex(VertexId v) {
    Node& n = node(v);
    for (const Neighbor& nb : n.adjacency) {
        auto& other = nodes_[nb.id]->adjacency;
        other.erase(lower_bound_id(other, v));
    }
    edge_count_ -= n.adjacency.size();
    nodes_[v].reset();
    --vertex_count_;
}

bool Roadmap::add_edge(VertexId u, VertexId v) {
    if (u == v) throw UsageError("self-loops are not allowed");
    Node& a = node(u);
    Node& b = node(v);
    auto it = lower_bound_id(a.adjacency, v);
    if (it != a.adjacency.end() && it->id == v) return false;
    const double w = distance(a.record.config, b.record.config);
    if (!(w > 0.0)) throw UsageError("edge endpoints coincide");
    a.adjacency.insert(it, Neighbor{v, w});
    b.adjacency.insert(lower_bound_id(b.adjacency, u), Neighbor{u, w});
    ++edge_count_;
    return true;
}

void Roadmap::remove_edge(VertexId u, VertexId v) {
    Node& a = node(u);
    Node& b = node(v);
    auto it = lower_bound_id(a.adjacency, v);
    if (it == a.adjacency.end() || it->id != v) throw UsageError("edge does not exist");
    a.adjacency.erase(it);
    b.adjacency.erase(lower_bound_id(b.adjacency, u));
    --edge_count_;
}

bool Roadmap::has_vertex(VertexId v) const noexcept { return v < nodes_.size() && nodes_[v].has_value(); }

bool Roadmap::has_edge(VertexId u, VertexId v) const { return weight(u, v).has_value(); }

std::optional<double> Roadmap::weight(VertexId u, VertexId v) const {
    const auto& adj = node(u).adjacency;
    (void)node(v);
    auto it = lower_bound_id(adj, v);
    if (it == adj.end() || it->id != v) return std::nullopt;
    return it->weight;
}

const Configuration& Roadmap::config(VertexId v) const { return node(v).record.config; }

const std::vector<Configuration>& Roadmap::ancestors(VertexId v) const { return node(v).record.ancestors; }

std::size_t Roadmap::degree(VertexId v) const { return node(v).adjacency.size(); }

std::span<const Neighbor> Roadmap::adjacency(VertexId v) const { return node(v).adjacency; }

std::vector<VertexId> Roadmap::neighbors(VertexId v) const {
    const auto& adj = node(v).adjacency;
    std::vector<VertexId> out;
    out.reserve(adj.size());
    for (const auto& n : adj) out.push_back(n.id);
    return out;
}

std::vector<VertexId> Roadmap::vertex_ids() const {
    std::vector<VertexId> out;
    out.reserve(vertex_count_);
    for (VertexId v = 0; v < nodes_.size(); ++v) {
        if (nodes_[v]) out.push_back(v);
    }
    return out;
}

std::vector<Edge> Roadmap::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (VertexId v = 0; v < nodes_.size(); ++v) {
        if (!nodes_[v]) continue;
        for (const auto& n : nodes_[v]->adjacency) {
            if (v < n.id) out.push_back(Edge{v, n.id, n.weight});
        }
    }
    return out;
}

VertexId Roadmap::contract_edge(VertexId u, VertexId v, Configuration p) {
    if (!has_vertex(u) || !has_vertex(v) || !has_edge(u, v)) throw UsageError("contract_edge: edge does not exist");
    check_config(p);

    const auto& adj_u = node(u).adjacency;
    const auto& adj_v = node(v).adjacency;
    std::vector<VertexId> joined;
    joined.reserve(adj_u.size() + adj_v.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < adj_u.size() || j < adj_v.size()) {
        VertexId next = 0;
        if (j == adj_v.size() || (i < adj_u.size() && adj_u[i].id < adj_v[j].id)) {
            next = adj_u[i++].id;
        } else if (i == adj_u.size() || adj_v[j].id < adj_u[i].id) {
            next = adj_v[j++].id;
        } else {
            next = adj_u[i].id;
            ++i;
            ++j;
        }
        if (next != u && next != v) joined.push_back(next);
    }

    std::vector<Configuration> ancestors = std::move(node(u).record.ancestors);
    auto& other = node(v).record.ancestors;
    ancestors.reserve(ancestors.size() + other.size() + 2);
    std::move(other.begin(), other.end(), std::back_inserter(ancestors));
    ancestors.push_back(node(u).record.config);
    ancestors.push_back(node(v).record.config);

    remove_vertex(u);
    remove_vertex(v);
    const VertexId id = add_vertex(std::move(p), std::move(ancestors));
    for (VertexId w : joined) add_edge(w, id);
    return id;
}

double size_measure(const Roadmap& g) {
    return static_cast<double>(g.dim()) * static_cast<double>(g.vertex_count()) +
           3.0 * static_cast<double>(g.edge_count());
}

Components connected_components(const Roadmap& g) {
    Components out;
    constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
    out.label.assign(g.id_limit(), kUnset);
    std::vector<VertexId> stack;
    for (VertexId root : g.vertex_ids()) {
        if (out.label[root] != kUnset) continue;
        const std::size_t label = out.count++;
        out.label[root] = label;
        stack.push_back(root);
        while (!stack.empty()) {
            const VertexId v = stack.back();
            stack.pop_back();
            for (const auto& n : g.adjacency(v)) {
                if (out.label[n.id] == kUnset) {
                    out.label[n.id] = label;
                    stack.push_back(n.id);
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text format

void save_roadmap(const Roadmap& g, std::ostream& out) {
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    const auto ids = g.vertex_ids();
    std::vector<std::size_t> index(g.id_limit(), 0);
    for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;

    out << "roadmap 1\n";
    out << "dim " << g.dim() << '\n';
    out << "vertices " << g.vertex_count() << '\n';
    out << "edges " << g.edge_count() << '\n';
    for (std::size_t i = 0; i < ids.size(); ++i) {
        out << "v " << i;
        for (double x : g.config(ids[i])) out << ' ' << x;
        out << '\n';
    }
    for (const auto& e : g.edges()) {
        out << "e " << index[e.u] << ' ' << index[e.v] << ' ' << e.weight << '\n';
    }
    out.precision(old_precision);
}

void save_roadmap(const Roadmap& g, const std::filesystem::path& path) {
    write_file_atomic(path, [&g](std::ostream& out) { save_roadmap(g, out); });
}

namespace {

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    // Next non-blank, comment-stripped line; false at end of input.
    bool next(std::istringstream& line) {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++line_no_;
            if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
            if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
            line.clear();
            line.str(raw);
            return true;
        }
        return false;
    }

    [[nodiscard]] std::size_t line_no() const noexcept { return line_no_; }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

template <typename T>
T read_value(std::istringstream& line, std::size_t line_no, const char* what) {
    std::string token;
    if (!(line >> token)) throw ParseError(line_no, std::string("missing ") + what);
    std::istringstream tok(token);
    T value{};
    if (!(tok >> value) || !tok.eof()) throw ParseError(line_no, std::string("bad ") + what + " '" + token + "'");
    return value;
}

void expect_end(std::istringstream& line, std::size_t line_no) {
    std::string extra;
    if (line >> extra) throw ParseError(line_no, "unexpected trailing token '" + extra + "'");
}

std::size_t read_header(LineReader& reader, const char* keyword) {
    std::istringstream line;
    if (!reader.next(line)) throw ParseError(0, std::string("missing '") + keyword + "' header");
    std::string key;
    line >> key;
    if (key != keyword) throw ParseError(reader.line_no(), std::string("expected '") + keyword + "', got '" + key + "'");
    const auto value = read_value<std::size_t>(line, reader.line_no(), keyword);
    expect_end(line, reader.line_no());
    return value;
}

}  // namespace

Roadmap load_roadmap(std::istream& in) {
    LineReader reader(in);
    if (read_header(reader, "roadmap") != 1) throw ParseError(reader.line_no(), "unsupported roadmap version");
    const std::size_t dim = read_header(reader, "dim");
    if (dim == 0) throw ParseError(reader.line_no(), "dim must be positive");
    const std::size_t n_vertices = read_header(reader, "vertices");
    const std::size_t n_edges = read_header(reader, "edges");

    Roadmap g(dim);
    std::unordered_map<long long, VertexId> ids;
    std::size_t edges_seen = 0;
    std::istringstream line;
    while (reader.next(line)) {
        const std::size_t line_no = reader.line_no();
        std::string kind;
        line >> kind;
        if (kind == "v") {
            if (edges_seen > 0) throw ParseError(line_no, "vertex after edges");
            const auto file_id = read_value<long long>(line, line_no, "vertex id");
            Configuration q(dim);
            for (auto& x : q) {
                x = read_value<double>(line, line_no, "coordinate");
                if (!std::isfinite(x)) throw ParseError(line_no, "coordinate is not finite");
            }
            expect_end(line, line_no);
            if (ids.contains(file_id)) throw ParseError(line_no, "duplicate vertex id " + std::to_string(file_id));
            ids.emplace(file_id, g.add_vertex(std::move(q)));
        } else if (kind == "e") {
            const auto a = read_value<long long>(line, line_no, "edge endpoint");
            const auto b = read_value<long long>(line, line_no, "edge endpoint");
            const auto w = read_value<double>(line, line_no, "edge weight");
            expect_end(line, line_no);
            const auto ia = ids.find(a);
            const auto ib = ids.find(b);
            if (ia == ids.end() || ib == ids.end()) {
                throw ParseError(line_no, "edge references missing vertex " + std::to_string(ia == ids.end() ? a : b));
            }
            if (a == b) throw ParseError(line_no, "self-loop");
            const double expected = distance(g.config(ia->second), g.config(ib->second));
            if (!(expected > 0.0)) throw ParseError(line_no, "edge endpoints coincide");
            if (!(std::abs(w - expected) <= 1e-6 * expected)) {
                throw ParseError(line_no, "edge weight " + std::to_string(w) + " does not match distance " +
                                              std::to_string(expected));
            }
            if (!g.add_edge(ia->second, ib->second)) throw ParseError(line_no, "parallel edge");
            ++edges_seen;
        } else {
            throw ParseError(line_no, "unknown record '" + kind + "'");
        }
    }
    if (g.vertex_count() != n_vertices) {
        throw ParseError(reader.line_no(), "header declares " + std::to_string(n_vertices) + " vertices, found " +
                                               std::to_string(g.vertex_count()));
    }
    if (g.edge_count() != n_edges) {
        throw ParseError(reader.line_no(), "header declares " + std::to_string(n_edges) + " edges, found " +
                                               std::to_string(g.edge_count()));
    }
    return g;
}

Roadmap load_roadmap(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open roadmap file " + path.string());
    return load_roadmap(in);
}

}  // namespace rsec

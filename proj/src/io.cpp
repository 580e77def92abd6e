#include "sg/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace sg {

namespace {

struct LineReader {
    std::istream& in;
    int line_no = 0;

    bool next(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            tokens.clear();
            std::istringstream ss(line);
            std::string tok;
            while (ss >> tok) tokens.push_back(tok);
            if (tokens.empty() || tokens[0][0] == '#') continue;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ValidationError("line " + std::to_string(line_no) + ": " + msg);
    }

    int to_int(const std::string& s) const {
        try {
            size_t used = 0;
            int v = std::stoi(s, &used);
            if (used != s.size()) fail("bad integer '" + s + "'");
            return v;
        } catch (const ValidationError&) {
            throw;
        } catch (...) {
            fail("bad integer '" + s + "'");
        }
    }

    long long to_ll(const std::string& s) const {
        try {
            size_t used = 0;
            long long v = std::stoll(s, &used);
            if (used != s.size()) fail("bad integer '" + s + "'");
            return v;
        } catch (const ValidationError&) {
            throw;
        } catch (...) {
            fail("bad integer '" + s + "'");
        }
    }
};

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    return in;
}

}  // namespace

SignedGraph parse_graph(std::istream& in) {
    LineReader r{in};
    std::vector<std::string> t;
    std::vector<EdgeRecord> edges;
    std::vector<int> vertices;
    while (r.next(t)) {
        if (t[0] == "v") {
            if (t.size() != 2) r.fail("expected: v <id>");
            vertices.push_back(r.to_int(t[1]));
        } else if (t[0] == "e") {
            if (t.size() != 5) r.fail("expected: e <edge-id> <u> <v> <+|->");
            EdgeRecord e;
            e.id = r.to_int(t[1]);
            e.u = r.to_int(t[2]);
            e.v = r.to_int(t[3]);
            if (t[4] == "+")
                e.sign = +1;
            else if (t[4] == "-")
                e.sign = -1;
            else
                r.fail("sign must be + or -");
            edges.push_back(e);
        } else {
            r.fail("unknown record '" + t[0] + "'");
        }
    }
    try {
        return SignedGraph::build(edges, vertices);
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("graph: ") + e.what());
    }
}

SignedGraph parse_graph_file(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    return parse_graph(in);
}

void emit_graph(std::ostream& out, const SignedGraph& g) {
    for (int vi = 0; vi < g.vertex_count(); ++vi) out << "v " << g.vertex_id(vi) << "\n";
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        const EdgeRecord& e = g.record(ei);
        out << "e " << e.id << " " << e.u << " " << e.v << " " << (e.sign > 0 ? "+" : "-")
            << "\n";
    }
}

std::string graph_to_string(const SignedGraph& g) {
    std::ostringstream ss;
    emit_graph(ss, g);
    return ss.str();
}

Orientation parse_orientation(std::istream& in, const SignedGraph& g) {
    LineReader r{in};
    std::vector<std::string> t;
    Orientation o;
    o.end.assign(g.edge_count(), {0, 0});
    while (r.next(t)) {
        if (t[0] != "o" || t.size() != 4) r.fail("expected: o <edge-id> <+1|-1> <+1|-1>");
        int ei = g.edge_index(r.to_int(t[1]));
        if (o.end[ei][0] != 0) r.fail("duplicate orientation for edge " + t[1]);
        int a = r.to_int(t[2]), b = r.to_int(t[3]);
        if (std::abs(a) != 1 || std::abs(b) != 1) r.fail("end values must be +1 or -1");
        o.end[ei] = {a, b};
    }
    validate_orientation(g, o);
    return o;
}

Orientation parse_orientation_file(const std::string& path, const SignedGraph& g) {
    std::ifstream in = open_or_throw(path);
    return parse_orientation(in, g);
}

void emit_orientation(std::ostream& out, const SignedGraph& g, const Orientation& o) {
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        if (!o.defined(ei)) continue;
        out << "o " << g.edge_id(ei) << " " << (o.end[ei][0] > 0 ? "+1" : "-1") << " "
            << (o.end[ei][1] > 0 ? "+1" : "-1") << "\n";
    }
}

std::string orientation_to_string(const SignedGraph& g, const Orientation& o) {
    std::ostringstream ss;
    emit_orientation(ss, g, o);
    return ss.str();
}

EdgeFn parse_flow(std::istream& in, const SignedGraph& g) {
    LineReader r{in};
    std::vector<std::string> t;
    EdgeFn f(g.edge_count(), 0);
    std::vector<char> seen(g.edge_count(), 0);
    while (r.next(t)) {
        if (t[0] != "f" || t.size() != 3) r.fail("expected: f <edge-id> <integer>");
        int ei = g.edge_index(r.to_int(t[1]));
        if (seen[ei]) r.fail("duplicate flow value for edge " + t[1]);
        seen[ei] = 1;
        f[ei] = r.to_ll(t[2]);
    }
    return f;
}

EdgeFn parse_flow_file(const std::string& path, const SignedGraph& g) {
    std::ifstream in = open_or_throw(path);
    return parse_flow(in, g);
}

void emit_flow(std::ostream& out, const SignedGraph& g, const EdgeFn& f) {
    for (int ei = 0; ei < g.edge_count(); ++ei)
        if (f[ei] != 0) out << "f " << g.edge_id(ei) << " " << f[ei] << "\n";
}

std::string flow_to_string(const SignedGraph& g, const EdgeFn& f) {
    std::ostringstream ss;
    emit_flow(ss, g, f);
    return ss.str();
}

void emit_cover_mapping(std::ostream& out, const SignedGraph& g, const CoverGraph& cover) {
    for (int cei = 0; cei < cover.graph.edge_count(); ++cei)
        out << cover.graph.edge_id(cei) << " -> " << g.edge_id(cover.base_edge_of(cei)) << " "
            << (cover.edge_beta(cei) > 0 ? "+" : "-") << "\n";
}

}  // namespace sg

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sg/decompose.hpp"
#include "sg/io.hpp"
#include "sg/rand.hpp"
#include "sg/selftest.hpp"

using nlohmann::json;

namespace {

struct CommonArgs {
    std::string graph_path;
    std::string orientation_path;
    std::string flow_path;
};

sg::SignedGraph load_graph(const CommonArgs& a) { return sg::parse_graph_file(a.graph_path); }

sg::Orientation load_orientation(const CommonArgs& a, const sg::SignedGraph& g) {
    if (a.orientation_path.empty()) return sg::default_orientation(g);
    return sg::parse_orientation_file(a.orientation_path, g);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw sg::ValidationError("cannot write file: " + path);
    return out;
}

json edges_json(const sg::SignedGraph& g, const std::vector<int>& edges) {
    json a = json::array();
    for (int ei : edges) a.push_back(g.edge_id(ei));
    return a;
}

const char* circuit_type_name(sg::CircuitType t) {
    switch (t) {
        case sg::CircuitType::I: return "I";
        case sg::CircuitType::II: return "II";
        default: return "III";
    }
}

void print_circuit(std::ostream& out, const sg::SignedGraph& g, const sg::Circuit& c) {
    out << "circuit type " << circuit_type_name(c.type) << "\n";
    out << "  circle:";
    for (int ei : c.circle_a) out << " " << g.edge_id(ei);
    out << "\n";
    if (!c.circle_b.empty()) {
        out << "  circle:";
        for (int ei : c.circle_b) out << " " << g.edge_id(ei);
        out << "\n";
    }
    if (c.type == sg::CircuitType::II)
        out << "  joint vertex: " << g.vertex_id(c.joint_vertex) << "\n";
    if (!c.path_edges.empty()) {
        out << "  path:";
        for (int ei : c.path_edges) out << " " << g.edge_id(ei);
        out << "\n";
    }
}

json circuit_json(const sg::SignedGraph& g, const sg::Circuit& c) {
    json j;
    j["type"] = circuit_type_name(c.type);
    j["circle_a"] = edges_json(g, c.circle_a);
    if (!c.circle_b.empty()) j["circle_b"] = edges_json(g, c.circle_b);
    if (!c.path_edges.empty()) j["path"] = edges_json(g, c.path_edges);
    if (c.type == sg::CircuitType::II) j["joint_vertex"] = g.vertex_id(c.joint_vertex);
    return j;
}

void print_tree_report(std::ostream& out, const sg::SignedGraph& g, const sg::CircleTree& t) {
    out << "circle-tree with " << t.circle_count() << " circle block(s), "
        << t.block_paths.size() << " block path(s)\n";
    for (int c = 0; c < t.circle_count(); ++c) {
        out << "  circle " << c << ":";
        for (int ei : t.circle_blocks[c]) out << " " << g.edge_id(ei);
        out << "  sign " << (t.circle_sign[c] > 0 ? "+" : "-") << " cut-vertices "
            << t.cuts_on_circle[c] << "\n";
    }
    for (const sg::BlockPathInfo& p : t.block_paths) {
        out << "  path";
        if (p.edges.empty())
            out << " (shared vertex " << g.vertex_id(p.cut_a) << ")";
        else
            for (int ei : p.edges) out << " " << g.edge_id(ei);
        out << " joins circles " << p.circle_a << "," << p.circle_b << "\n";
    }
    out << "  length " << t.tree_length << "\n";
    out << "  sesqui-Eulerian: " << (t.sesqui_eulerian ? "yes" : "no") << "\n";
}

json tree_json(const sg::SignedGraph& g, const sg::CircleTree& t) {
    json j;
    j["circle_blocks"] = json::array();
    for (const auto& cb : t.circle_blocks) j["circle_blocks"].push_back(edges_json(g, cb));
    j["block_paths"] = json::array();
    for (const auto& p : t.block_paths) {
        json pj;
        pj["edges"] = edges_json(g, p.edges);
        pj["circles"] = {p.circle_a, p.circle_b};
        if (p.edges.empty()) pj["shared_vertex"] = g.vertex_id(p.cut_a);
        j["block_paths"].push_back(pj);
    }
    json cuts = json::array();
    for (int cv : t.cut_vertices) cuts.push_back(g.vertex_id(cv));
    j["cut_vertices"] = cuts;
    j["length"] = t.tree_length;
    j["sesqui_eulerian"] = t.sesqui_eulerian;
    return j;
}

int cmd_cover(const CommonArgs& args, const std::string& out_prefix) {
    sg::SignedGraph g = load_graph(args);
    sg::Orientation o = load_orientation(args, g);
    sg::CoverGraph cover = sg::build_cover(g);
    sg::Orientation lifted = sg::lift_orientation(g, cover, o);

    if (out_prefix.empty()) {
        std::cout << "# cover graph\n";
        sg::emit_graph(std::cout, cover.graph);
        std::cout << "# mapping: cover edge -> base edge, level\n";
        sg::emit_cover_mapping(std::cout, g, cover);
        std::cout << "# lifted orientation\n";
        sg::emit_orientation(std::cout, cover.graph, lifted);
    } else {
        auto go = open_out(out_prefix + ".cover.sg");
        sg::emit_graph(go, cover.graph);
        auto mo = open_out(out_prefix + ".cover.map");
        sg::emit_cover_mapping(mo, g, cover);
        auto oo = open_out(out_prefix + ".cover.ort");
        sg::emit_orientation(oo, cover.graph, lifted);
    }
    return 0;
}

int cmd_check_flow(const CommonArgs& args) {
    sg::SignedGraph g = load_graph(args);
    sg::Orientation o = load_orientation(args, g);
    sg::EdgeFn f = sg::parse_flow_file(args.flow_path, g);
    sg::VertexFn b = sg::boundary(g, o, f);
    bool ok = true;
    for (int vi = 0; vi < g.vertex_count(); ++vi) {
        if (b[vi] == 0) continue;
        ok = false;
        std::cout << "boundary " << b[vi] << " at vertex " << g.vertex_id(vi) << "\n";
    }
    std::cout << (ok ? "flow\n" : "not a flow\n");
    return ok ? 0 : 1;
}

int cmd_classify(const CommonArgs& args, const std::vector<int>& edge_ids, bool as_json) {
    sg::SignedGraph g = load_graph(args);
    std::vector<int> edges;
    if (edge_ids.empty())
        edges = [&] {
            std::vector<int> all(g.edge_count());
            for (int i = 0; i < g.edge_count(); ++i) all[i] = i;
            return all;
        }();
    else
        for (int id : edge_ids) edges.push_back(g.edge_index(id));

    auto circuit = sg::classify_circuit(g, edges);
    sg::RecognitionResult rec = sg::recognize_circle_tree(g, edges);
    if (as_json) {
        json j;
        if (circuit) j["circuit"] = circuit_json(g, *circuit);
        if (rec.ok())
            j["circle_tree"] = tree_json(g, *rec.tree);
        else
            j["failure"] = std::string(1, rec.failure->condition) + ": " + rec.failure->detail;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (circuit) print_circuit(std::cout, g, *circuit);
    if (rec.ok()) {
        print_tree_report(std::cout, g, *rec.tree);
    } else {
        std::cout << "not a circle-tree: condition (" << rec.failure->condition << ") "
                  << rec.failure->detail << "\n";
    }
    return 0;
}

int cmd_circuits(const CommonArgs& args, int cap, bool as_json) {
    sg::SignedGraph g = load_graph(args);
    std::vector<sg::Circuit> e = sg::enumerate_circuits(g, cap);
    if (as_json) {
        json j = json::array();
        for (const sg::Circuit& c : e) j.push_back(circuit_json(g, c));
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << e.size() << " circuit(s)\n";
    for (const sg::Circuit& c : e) print_circuit(std::cout, g, c);
    return 0;
}

int cmd_decompose(const CommonArgs& args, bool half, bool doubled, bool check_oracle,
                  const sg::OracleCaps& caps, bool as_json) {
    sg::SignedGraph g = load_graph(args);
    sg::Orientation o = load_orientation(args, g);
    sg::EdgeFn f = sg::parse_flow_file(args.flow_path, g);
    sg::Decomposition dec = sg::conformal_decompose(g, o, f);

    json out_json;
    out_json["parts"] = json::array();
    if (!as_json) std::cout << dec.parts.size() << " part(s)\n";
    for (size_t pi = 0; pi < dec.parts.size(); ++pi) {
        const sg::DecompositionPart& p = dec.parts[pi];
        if (as_json) {
            json pj;
            pj["multiplicity"] = p.multiplicity;
            pj["values"] = json::object();
            for (int ei = 0; ei < g.edge_count(); ++ei)
                if (p.values[ei] != 0)
                    pj["values"][std::to_string(g.edge_id(ei))] = p.values[ei];
            pj["certificate"] = tree_json(g, p.certificate);
            if (half) {
                sg::HalfDecomposition hd = sg::half_integer_decompose(g, p.certificate);
                pj["half"] = json::array();
                for (const auto& [c, num] : hd.circuits) {
                    json cj = circuit_json(g, c);
                    cj["numerator"] = num;
                    pj["half"].push_back(cj);
                }
            }
            out_json["parts"].push_back(pj);
            continue;
        }
        std::cout << "part " << pi << " x" << p.multiplicity << "\n";
        for (int ei = 0; ei < g.edge_count(); ++ei)
            if (p.values[ei] != 0)
                std::cout << "  f " << g.edge_id(ei) << " " << p.values[ei] << "\n";
        print_tree_report(std::cout, g, p.certificate);
        if (half) {
            sg::HalfDecomposition hd = sg::half_integer_decompose(g, p.certificate);
            std::cout << "  half-integral split into " << hd.circuits.size()
                      << " circuit(s)\n";
            for (const auto& [c, num] : hd.circuits) {
                std::cout << "  x" << num << "/2 ";
                print_circuit(std::cout, g, c);
            }
        }
    }

    if (doubled) {
        std::vector<sg::CircuitFlowTerm> terms = sg::double_circuit_decompose(g, o, f);
        if (as_json) {
            out_json["double"] = json::array();
            for (const sg::CircuitFlowTerm& t : terms) {
                json tj = circuit_json(g, t.circuit);
                tj["coefficient"] = t.coefficient;
                out_json["double"].push_back(tj);
            }
        } else {
            std::cout << "2f as " << terms.size() << " circuit flow term(s)\n";
            for (const sg::CircuitFlowTerm& t : terms) {
                std::cout << "coefficient " << t.coefficient << " ";
                print_circuit(std::cout, g, t.circuit);
            }
        }
    }

    if (check_oracle) {
        sg::Orientation of = sg::orientation_of_flow(g, o, f);
        sg::EdgeFn h = sg::abs_function(f);
        std::vector<sg::EdgeFn> minimal = sg::oracle_minimal_flows(g, of, h, caps);
        for (const sg::DecompositionPart& p : dec.parts) {
            sg::EdgeFn hp = sg::abs_function(p.values);
            if (std::find(minimal.begin(), minimal.end(), hp) == minimal.end())
                throw sg::InternalError("a decomposition part is not oracle-minimal");
        }
        if (!as_json) std::cout << "oracle check passed (" << minimal.size()
                                << " minimal flows below |f|)\n";
        else
            out_json["oracle_minimal_count"] = minimal.size();
    }

    if (as_json) std::cout << out_json.dump(2) << "\n";
    return 0;
}

int cmd_random(uint64_t seed, const sg::InstanceParams& params, const std::string& prefix) {
    sg::Instance inst = sg::random_instance(seed, params);
    auto go = open_out(prefix + ".sg");
    sg::emit_graph(go, inst.graph);
    auto oo = open_out(prefix + ".ort");
    sg::emit_orientation(oo, inst.graph, inst.orientation);
    auto fo = open_out(prefix + ".flw");
    sg::emit_flow(fo, inst.graph, inst.flow);
    return 0;
}

int cmd_selftest(const sg::SelftestOptions& opts) {
    sg::SelftestReport report = sg::run_selftest(opts);
    for (const std::string& line : report.lines) std::cout << line << "\n";
    std::cout << report.passed << " passed, " << report.failed << " failed\n";
    return report.ok() ? 0 : 2;
}

long long env_ll(const char* name, long long fallback) {
    const char* v = std::getenv(name);
    if (!v) return fallback;
    try {
        return std::stoll(v);
    } catch (...) {
        return fallback;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"integral flows on signed graphs: covers, circuits, decompositions"};
    app.require_subcommand(1);

    sg::OracleCaps caps;
    caps.max_support = static_cast<int>(env_ll("SGFLOW_ORACLE_SUPPORT", caps.max_support));
    caps.max_value = env_ll("SGFLOW_ORACLE_VALUES", caps.max_value);
    int circuit_cap = static_cast<int>(env_ll("SGFLOW_CIRCUIT_EDGES", 16));

    CommonArgs args;
    std::string out_prefix;
    bool as_json = false, half = false, doubled = false, check_oracle = false;
    std::vector<int> edge_ids;

    auto add_common = [&](CLI::App* cmd, bool need_flow) {
        cmd->add_option("-g,--graph", args.graph_path, "graph file")->required();
        cmd->add_option("-o,--orientation", args.orientation_path,
                        "orientation file (default: slot-0 end +1)");
        if (need_flow) cmd->add_option("-f,--flow", args.flow_path, "flow file")->required();
    };

    CLI::App* cover = app.add_subcommand("cover", "emit the double covering graph");
    add_common(cover, false);
    cover->add_option("--out", out_prefix, "write <prefix>.cover.{sg,map,ort} instead of stdout");

    CLI::App* check = app.add_subcommand("check-flow", "validate the boundary of a flow");
    add_common(check, true);

    CLI::App* classify = app.add_subcommand("classify", "circuit type / circle-tree report");
    add_common(classify, false);
    classify->add_option("--edges", edge_ids, "edge ids of the subgraph (default: all)");
    classify->add_flag("--json", as_json, "structured output");

    CLI::App* circuits = app.add_subcommand("circuits", "enumerate signed-graph circuits");
    add_common(circuits, false);
    circuits->add_option("--cap", circuit_cap, "edge-count cap for enumeration");
    circuits->add_flag("--json", as_json, "structured output");

    CLI::App* decompose = app.add_subcommand("decompose", "conformal decomposition of a flow");
    add_common(decompose, true);
    decompose->add_flag("--half", half, "also split certificates into half circuits");
    decompose->add_flag("--double", doubled, "also decompose 2f into circuit flows");
    decompose->add_flag("--check-oracle", check_oracle, "verify parts against the brute-force oracle");
    decompose->add_option("--oracle-support", caps.max_support, "oracle support cap");
    decompose->add_option("--oracle-values", caps.max_value, "oracle value cap");
    decompose->add_flag("--json", as_json, "structured output");

    uint64_t seed = 1;
    sg::InstanceParams params;
    std::string random_prefix = "instance";
    CLI::App* random = app.add_subcommand("random", "emit a random graph, orientation, flow");
    random->add_option("--seed", seed, "generator seed")->required();
    random->add_option("--max-vertices", params.max_vertices, "vertex cap");
    random->add_option("--max-edges", params.max_edges, "edge cap");
    random->add_option("--max-walks", params.max_walks, "walk summands in the flow");
    random->add_flag("--all-positive", params.all_positive, "only positive edges");
    random->add_flag("--connected", params.connected, "force a connected graph");
    random->add_option("--out", random_prefix, "output prefix");

    sg::SelftestOptions st;
    st.oracle_caps = caps;
    CLI::App* selftest = app.add_subcommand("selftest", "run the built-in invariant suite");
    selftest->add_option("--seed", st.seed, "base seed");
    selftest->add_option("--instances", st.instances, "number of random instances");
    selftest->add_flag("!--no-oracle", st.with_oracle, "skip the exhaustive oracle");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cover->parsed()) return cmd_cover(args, out_prefix);
        if (check->parsed()) return cmd_check_flow(args);
        if (classify->parsed()) return cmd_classify(args, edge_ids, as_json);
        if (circuits->parsed()) return cmd_circuits(args, circuit_cap, as_json);
        if (decompose->parsed())
            return cmd_decompose(args, half, doubled, check_oracle, caps, as_json);
        if (random->parsed()) return cmd_random(seed, params, random_prefix);
        if (selftest->parsed()) return cmd_selftest(st);
    } catch (const sg::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const sg::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

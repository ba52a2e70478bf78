#include "incr/theoremgraph.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace incr {

const char* statement_name(Statement s) {
    switch (s) {
        case Statement::IAF: return "IAF";
        case Statement::IAFPrime: return "IAFPrime";
        case Statement::IAFG: return "IAFG";
        case Statement::MAJA: return "MAJA";
        case Statement::SVD: return "SVD";
        case Statement::FCD: return "FCD";
        case Statement::Rolle: return "Rolle";
        case Statement::TAF: return "TAF";
        case Statement::DarbouxAndSVD: return "DarbouxAndSVD";
    }
    return "?";
}

Statement parse_statement(const std::string& text) {
    std::string low;
    low.reserve(text.size());
    for (char ch : text) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (low == "iaf'") return Statement::IAFPrime;
    for (int i = 0; i < kStatementCount; ++i) {
        const Statement s = static_cast<Statement>(i);
        std::string name = statement_name(s);
        for (char& ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        if (low == name) return s;
    }
    throw Error(Errc::UnknownStatement, "unknown statement: " + text);
}

TheoremGraph::TheoremGraph() {
    auto arc = [this](Statement from, Statement to, const char* note) {
        edges_.push_back({from, to, note});
        adj_[static_cast<int>(from)][static_cast<int>(to)] = true;
    };
    using S = Statement;

    // Equivalent pairs, one arc per direction with its own proof device.
    arc(S::IAF, S::IAFPrime, "shift trick: apply the absolute bound to f - m*id and M*id - f");
    arc(S::IAFPrime, S::IAF, "specialize m = -k, M = k");
    arc(S::IAFG, S::SVD, "take f = 0: a function with nonnegative derivative is nondecreasing");
    arc(S::SVD, S::IAFG, "g - f and g + f are nondecreasing when |f'| <= g'");
    arc(S::Rolle, S::TAF, "tilt by the secant: auxiliary g(x) = f(x) - P(a,b)*(x - a)");
    arc(S::TAF, S::Rolle, "specialize to equal endpoint values");
    arc(S::TAF, S::DarbouxAndSVD, "apply the equality on subintervals around the target slope");
    arc(S::DarbouxAndSVD, S::TAF,
        "chord slopes attain the mean slope; monotonicity closes the equality");
    arc(S::Rolle, S::DarbouxAndSVD, "interior extremum argument applied to f - v*id");
    arc(S::DarbouxAndSVD, S::Rolle, "zero is an intermediate derivative value under equal endpoints");

    // The mutual arrows between {IAFG, SVD} and MAJA.
    arc(S::IAFG, S::MAJA, "take g = M*id");
    arc(S::MAJA, S::IAFG, "apply M = 0 to f - g and to -f - g");
    arc(S::SVD, S::MAJA, "M*id - f is nondecreasing when f' <= M");
    arc(S::MAJA, S::SVD, "apply M = 0 to -f");

    // One-way consequences.
    arc(S::IAFG, S::IAF, "take g = k*id");
    arc(S::MAJA, S::IAF, "apply the one-sided bound to f and -f with M = k");
    arc(S::MAJA, S::IAFPrime, "apply the one-sided bound to f with M and to -f with -m");
    arc(S::SVD, S::IAFPrime, "M*id - f and f - m*id are nondecreasing");
    arc(S::IAF, S::FCD, "k = 0 freezes every increment");
    arc(S::IAFPrime, S::FCD, "nondecreasing and nonincreasing, hence constant");
    arc(S::SVD, S::FCD, "zero derivative is both signs: monotone both ways");
    arc(S::TAF, S::IAF, "bound the mean-value slope by sup |f'| <= k");
    arc(S::TAF, S::SVD, "the sign of f'(c) carries to the increment");
    arc(S::TAF, S::MAJA, "bound the mean-value slope by f' <= M");
    arc(S::TAF, S::FCD, "f(b) - f(a) = f'(c)(b - a) = 0 directly");
}

bool TheoremGraph::has_edge(Statement from, Statement to) const {
    return adj_[static_cast<int>(from)][static_cast<int>(to)];
}

bool TheoremGraph::implies(Statement from, Statement to) const {
    if (from == to) return true;
    bool seen[kStatementCount] = {};
    std::array<int, kStatementCount> stack{};
    int top = 0;
    stack[top++] = static_cast<int>(from);
    seen[static_cast<int>(from)] = true;
    while (top > 0) {
        const int u = stack[--top];
        for (int v = 0; v < kStatementCount; ++v) {
            if (!adj_[u][v] || seen[v]) continue;
            if (v == static_cast<int>(to)) return true;
            seen[v] = true;
            stack[top++] = v;
        }
    }
    return false;
}

namespace {

struct TarjanState {
    const bool (*adj)[kStatementCount];
    int index_counter = 0;
    std::array<int, kStatementCount> index{}, lowlink{};
    std::array<bool, kStatementCount> on_stack{};
    std::vector<int> stack;
    std::vector<std::vector<int>> components;

    explicit TarjanState(const bool (*a)[kStatementCount]) : adj(a) {
        index.fill(-1);
        lowlink.fill(-1);
        on_stack.fill(false);
    }

    void strongconnect(int v) {
        index[v] = lowlink[v] = index_counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (int w = 0; w < kStatementCount; ++w) {
            if (!adj[v][w]) continue;
            if (index[w] < 0) {
                strongconnect(w);
                lowlink[v] = std::min(lowlink[v], lowlink[w]);
            } else if (on_stack[w]) {
                lowlink[v] = std::min(lowlink[v], index[w]);
            }
        }
        if (lowlink[v] == index[v]) {
            std::vector<int> comp;
            int w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w);
            } while (w != v);
            components.push_back(std::move(comp));
        }
    }
};

} // namespace

std::vector<std::vector<Statement>> TheoremGraph::equivalence_classes() const {
    TarjanState st(adj_);
    for (int v = 0; v < kStatementCount; ++v)
        if (st.index[v] < 0) st.strongconnect(v);

    std::vector<std::vector<Statement>> classes;
    for (auto& comp : st.components) {
        std::sort(comp.begin(), comp.end());
        std::vector<Statement> cls;
        cls.reserve(comp.size());
        for (int v : comp) cls.push_back(static_cast<Statement>(v));
        classes.push_back(std::move(cls));
    }
    std::sort(classes.begin(), classes.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return classes;
}

std::string TheoremGraph::to_dot() const {
    std::ostringstream out;
    out << "digraph implications {\n";
    out << "  rankdir=LR;\n";
    for (int i = 0; i < kStatementCount; ++i)
        out << "  " << statement_name(static_cast<Statement>(i)) << ";\n";
    for (const auto& e : edges_)
        out << "  " << statement_name(e.from) << " -> " << statement_name(e.to) << " [label=\""
            << e.note << "\"];\n";
    out << "}\n";
    return out.str();
}

TheoremGraph build_graph() { return TheoremGraph(); }

} // namespace incr

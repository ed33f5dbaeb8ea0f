#include <algorithm>
#include <future>
#include <sstream>

#include "ocfat/complex.hpp"

namespace ocfat {

long long sparse_matrix::at(int r, int c) const {
    for (const auto& [row, v] : columns[c])
        if (row == r) return v;
    return 0;
}

chain_complex build_complex(const topological_type& t, int jobs) {
    return build_complex(enumerate_generators(t, -1, jobs), t, jobs);
}

chain_complex build_complex(const generator_table& gens, const topological_type& t, int jobs) {
    chain_complex c;
    c.type = t;
    c.generators = gens;
    int top = static_cast<int>(gens.keys.size()) - 1;
    c.boundary.resize(std::max(top + 1, 1));
    jobs = std::max(1, jobs);
    if (top >= 0) {
        c.boundary[0].rows = 0;
        c.boundary[0].cols = static_cast<int>(gens.keys[0].size());
        c.boundary[0].columns.resize(c.boundary[0].cols);
    }
    for (int n = 1; n <= top; ++n) {
        const auto& cols = gens.graphs[n];
        std::map<std::string, int> row_index;
        for (std::size_t k = 0; k < gens.keys[n - 1].size(); ++k) row_index[gens.keys[n - 1][k]] = static_cast<int>(k);
        auto& m = c.boundary[n];
        m.rows = static_cast<int>(gens.keys[n - 1].size());
        m.cols = static_cast<int>(cols.size());
        m.columns.assign(m.cols, {});
        auto work = [&](int shard) {
            for (int j = shard; j < m.cols; j += jobs) {
                auto d = differential(cols[j]);
                auto& col = m.columns[j];
                for (const auto& [key, term] : d.terms()) {
                    auto it = row_index.find(key);
                    if (it == row_index.end())
                        fail(error_code::basis_miss, "degree " + std::to_string(n - 1) + " term " + key);
                    col.push_back({it->second, term.coefficient});
                }
                std::sort(col.begin(), col.end());
            }
        };
        if (jobs == 1) {
            work(0);
        } else {
            std::vector<std::future<void>> fs;
            for (int s = 0; s < jobs; ++s) fs.push_back(std::async(std::launch::async, work, s));
            for (auto& f : fs) f.get();
        }
    }
    return c;
}

int check_d_squared(const chain_complex& c) {
    for (int n = 2; n <= c.top_degree(); ++n) {
        const auto& outer = c.boundary[n - 1];
        const auto& inner = c.boundary[n];
        for (const auto& col : inner.columns) {
            std::map<int, long long> acc;
            for (const auto& [mid, v] : col)
                for (const auto& [row, w] : outer.columns[mid]) acc[row] += v * w;
            for (const auto& [row, v] : acc)
                if (v != 0) return n;
        }
    }
    return -1;
}

std::vector<homology_group> homology(const chain_complex& c) {
    int top = c.top_degree();
    std::vector<std::vector<mpz_class>> factors(top + 2);
    for (int n = 1; n <= top; ++n) factors[n] = invariant_factors(c.boundary[n]);
    std::vector<homology_group> out;
    for (int n = 0; n <= top; ++n) {
        homology_group h;
        h.degree = n;
        h.generators = static_cast<int>(c.generators.keys[n].size());
        int rank_out = static_cast<int>(factors[n].size());
        int rank_in = static_cast<int>(factors[n + 1].size());
        h.betti = h.generators - rank_out - rank_in;
        for (const auto& d : factors[n + 1])
            if (abs(d) > 1) h.torsion.push_back(abs(d));
        out.push_back(std::move(h));
    }
    return out;
}

std::string format_homology_table(const std::vector<homology_group>& hs) {
    std::ostringstream os;
    os << "n  #gens  betti  torsion\n";
    for (const auto& h : hs) {
        os << h.degree << "  " << h.generators << "  " << h.betti << "  ";
        if (h.torsion.empty()) os << "-";
        for (std::size_t k = 0; k < h.torsion.size(); ++k) os << (k ? "," : "") << "Z/" << h.torsion[k].get_str();
        os << "\n";
    }
    return os.str();
}

}  // namespace ocfat

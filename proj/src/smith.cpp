#include <algorithm>
#include <climits>
#include <map>
#include <set>

#include "ocfat/complex.hpp"

namespace ocfat {

namespace {

int_matrix identity(int n) {
    int_matrix m(n, std::vector<mpz_class>(n, 0));
    for (int k = 0; k < n; ++k) m[k][k] = 1;
    return m;
}

}  // namespace

smith_result smith_normal_form(const int_matrix& input, bool with_transforms) {
    int_matrix a = input;
    int rows = static_cast<int>(a.size());
    int cols = rows ? static_cast<int>(a[0].size()) : 0;
    smith_result res;
    if (with_transforms) {
        res.left = identity(rows);
        res.right = identity(cols);
    }
    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        std::swap(a[i], a[j]);
        if (with_transforms) std::swap(res.left[i], res.left[j]);
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (auto& r : a) std::swap(r[i], r[j]);
        if (with_transforms)
            for (auto& r : res.right) std::swap(r[i], r[j]);
    };
    // row_i += f * row_j
    auto add_row = [&](int i, int j, const mpz_class& f) {
        for (int c = 0; c < cols; ++c) a[i][c] += f * a[j][c];
        if (with_transforms)
            for (int c = 0; c < rows; ++c) res.left[i][c] += f * res.left[j][c];
    };
    auto add_col = [&](int i, int j, const mpz_class& f) {
        for (int r = 0; r < rows; ++r) a[r][i] += f * a[r][j];
        if (with_transforms)
            for (int r = 0; r < cols; ++r) res.right[r][i] += f * res.right[r][j];
    };

    for (int t = 0; t < std::min(rows, cols); ++t) {
        while (true) {
            int pr = -1, pc = -1;
            for (int i = t; i < rows; ++i)
                for (int j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (pr < 0 || abs(a[i][j]) < abs(a[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
            if (pr < 0) goto done;
            swap_rows(t, pr);
            swap_cols(t, pc);
            bool clean = true;
            for (int i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                add_row(i, t, -q);
                if (a[i][t] != 0) clean = false;
            }
            for (int j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                add_col(j, t, -q);
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            int bad_row = -1;
            for (int i = t + 1; i < rows && bad_row < 0; ++i)
                for (int j = t + 1; j < cols; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        bad_row = i;
                        break;
                    }
            if (bad_row < 0) break;
            add_row(t, bad_row, 1);
        }
        if (a[t][t] < 0) {
            for (int c = 0; c < cols; ++c) a[t][c] = -a[t][c];
            if (with_transforms)
                for (int c = 0; c < rows; ++c) res.left[t][c] = -res.left[t][c];
        }
        res.diagonal.push_back(a[t][t]);
        ++res.rank;
    }
done:
    return res;
}

namespace {

std::vector<mpz_class> invariant_factors_big(const sparse_matrix& m) {
    std::vector<std::map<int, mpz_class>> rows(m.rows);
    std::vector<std::set<int>> cols(m.cols);
    for (int c = 0; c < m.cols; ++c)
        for (const auto& [r, v] : m.columns[c])
            if (v != 0) {
                rows[r][c] = static_cast<long>(v);
                cols[c].insert(r);
            }
    std::vector<mpz_class> factors;
    std::vector<char> row_dead(m.rows, 0), col_dead(m.cols, 0);
    bool progress = true;
    while (progress) {
        progress = false;
        std::vector<int> order;
        for (int c = 0; c < m.cols; ++c)
            if (!col_dead[c] && !cols[c].empty()) order.push_back(c);
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return cols[x].size() < cols[y].size(); });
        for (int c : order) {
            if (col_dead[c] || cols[c].empty()) continue;
            int pr = -1;
            for (int r : cols[c]) {
                const auto& v = rows[r].at(c);
                if ((v == 1 || v == -1) && (pr < 0 || rows[r].size() < rows[pr].size())) pr = r;
            }
            if (pr < 0) continue;
            mpz_class u = rows[pr].at(c);
            std::vector<int> others(cols[c].begin(), cols[c].end());
            for (int r : others) {
                if (r == pr) continue;
                mpz_class f = rows[r].at(c) * u;
                for (const auto& [cc, v] : rows[pr]) {
                    auto& target = rows[r][cc];
                    target -= f * v;
                    if (target == 0) {
                        rows[r].erase(cc);
                        cols[cc].erase(r);
                    } else {
                        cols[cc].insert(r);
                    }
                }
            }
            for (const auto& [cc, v] : rows[pr]) cols[cc].erase(pr);
            rows[pr].clear();
            row_dead[pr] = 1;
            col_dead[c] = 1;
            factors.push_back(1);
            progress = true;
        }
    }
    std::vector<int> live_rows, live_cols;
    for (int r = 0; r < m.rows; ++r)
        if (!rows[r].empty()) live_rows.push_back(r);
    for (int c = 0; c < m.cols; ++c)
        if (!cols[c].empty()) live_cols.push_back(c);
    if (!live_rows.empty()) {
        std::map<int, int> col_pos;
        for (std::size_t k = 0; k < live_cols.size(); ++k) col_pos[live_cols[k]] = static_cast<int>(k);
        int_matrix dense(live_rows.size(), std::vector<mpz_class>(live_cols.size(), 0));
        for (std::size_t k = 0; k < live_rows.size(); ++k)
            for (const auto& [c, v] : rows[live_rows[k]]) dense[k][col_pos[c]] = v;
        auto s = smith_normal_form(dense);
        factors.insert(factors.end(), s.diagonal.begin(), s.diagonal.end());
    }
    return factors;
}

}  // namespace

namespace {

struct overflow {};

using sparse_row = std::vector<std::pair<int, long long>>;  // sorted by column

long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw overflow{};
    return r;
}

// row -= f * pivot_row
void eliminate(sparse_row& row, const sparse_row& pivot, long long f, std::vector<int>& gained) {
    sparse_row out;
    out.reserve(row.size() + pivot.size());
    std::size_t a = 0, b = 0;
    while (a < row.size() || b < pivot.size()) {
        if (b == pivot.size() || (a < row.size() && row[a].first < pivot[b].first)) {
            out.push_back(row[a++]);
        } else if (a == row.size() || pivot[b].first < row[a].first) {
            long long v = checked_mul(-f, pivot[b].second);
            out.push_back({pivot[b].first, v});
            gained.push_back(pivot[b].first);
            ++b;
        } else {
            long long v;
            if (__builtin_sub_overflow(row[a].second, checked_mul(f, pivot[b].second), &v)) throw overflow{};
            if (v != 0) out.push_back({row[a].first, v});
            ++a;
            ++b;
        }
    }
    row.swap(out);
}

long long entry(const sparse_row& row, int c) {
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(c, LLONG_MIN));
    return (it != row.end() && it->first == c) ? it->second : 0;
}

std::vector<mpz_class> invariant_factors_small(const sparse_matrix& m) {
    std::vector<sparse_row> rows(m.rows);
    std::vector<std::vector<int>> cols(m.cols);  // may hold stale rows
    for (int c = 0; c < m.cols; ++c)
        for (const auto& [r, v] : m.columns[c])
            if (v != 0) {
                rows[r].push_back({c, v});
                cols[c].push_back(r);
            }
    for (auto& r : rows) std::sort(r.begin(), r.end());
    std::vector<char> row_dead(m.rows, 0), col_dead(m.cols, 0);
    std::vector<mpz_class> factors;
    std::vector<int> order(m.cols);
    for (int c = 0; c < m.cols; ++c) order[c] = c;
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return cols[x].size() < cols[y].size(); });
    bool progress = true;
    std::vector<int> gained;
    while (progress) {
        progress = false;
        for (int c : order) {
            if (col_dead[c]) continue;
            auto& list = cols[c];
            // refresh the column's row list
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
            list.erase(std::remove_if(list.begin(), list.end(), [&](int r) { return row_dead[r] || entry(rows[r], c) == 0; }),
                       list.end());
            int pr = -1;
            for (int r : list) {
                long long v = entry(rows[r], c);
                if ((v == 1 || v == -1) && (pr < 0 || rows[r].size() < rows[pr].size())) pr = r;
            }
            if (pr < 0) continue;
            long long u = entry(rows[pr], c);
            for (int r : list) {
                if (r == pr) continue;
                long long f = entry(rows[r], c) * u;
                gained.clear();
                eliminate(rows[r], rows[pr], f, gained);
                for (int cc : gained) cols[cc].push_back(r);
            }
            rows[pr].clear();
            row_dead[pr] = 1;
            col_dead[c] = 1;
            list.clear();
            factors.push_back(1);
            progress = true;
        }
    }
    std::vector<int> live_rows, live_cols;
    std::vector<int> col_pos(m.cols, -1);
    for (int r = 0; r < m.rows; ++r)
        if (!row_dead[r] && !rows[r].empty()) live_rows.push_back(r);
    for (int r : live_rows)
        for (const auto& [c, v] : rows[r])
            if (col_pos[c] < 0) {
                col_pos[c] = static_cast<int>(live_cols.size());
                live_cols.push_back(c);
            }
    if (!live_rows.empty()) {
        int_matrix dense(live_rows.size(), std::vector<mpz_class>(live_cols.size(), 0));
        for (std::size_t k = 0; k < live_rows.size(); ++k)
            for (const auto& [c, v] : rows[live_rows[k]]) dense[k][col_pos[c]] = static_cast<long>(v);
        auto sr = smith_normal_form(dense);
        factors.insert(factors.end(), sr.diagonal.begin(), sr.diagonal.end());
    }
    return factors;
}

}  // namespace

std::vector<mpz_class> invariant_factors(const sparse_matrix& m) {
    try {
        return invariant_factors_small(m);
    } catch (const overflow&) {
        return invariant_factors_big(m);
    }
}

}  // namespace ocfat

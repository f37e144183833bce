// Copyright (c) impslice contributors.
// SPDX-License-Identifier: Apache-2.0
#include "impslice/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "impslice/encoding.hpp"
#include "impslice/error.hpp"
#include "impslice/slicer.hpp"
#include "impslice/syntax.hpp"

namespace impslice {

bool CheckReport::all_hold() const {
    return std::all_of(laws.begin(), laws.end(), [](const LawVerdict& v) { return v.holds(); });
}

const LawVerdict* CheckReport::find(const std::string& law) const {
    for (const auto& v : laws) {
        if (v.law == law) {
            return &v;
        }
    }
    return nullptr;
}

namespace {

std::string show(const SliceOutcome& p) { return "(" + render(p.program_slice) + ", [" + render(p.input_slice) + "])"; }

std::string show(const PartialState& q) { return "[" + render(q) + "]"; }

PartialState fwd_of(const Derivation& d, const SliceOutcome& p) { return fwd_cmd(d.trace, p.input_slice, p.program_slice); }

// The output domain has at most 64 variables whenever Q is enumerable, so a
// single word identifies an element of Q.
class OutputIndex {
  public:
    explicit OutputIndex(const MaskMatrix& q) {
        for (std::size_t j = 0; j < q.rows(); ++j) {
            index_.emplace(q.row(j)[0], j);
        }
    }
    [[nodiscard]] std::size_t operator()(const std::uint64_t* row) const { return index_.at(row[0]); }

  private:
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

bool rows_equal(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
    return std::equal(a, a + words, b);
}

// Immediate successors of an element of the factored P: one more state
// variable, or one more program node whose parent is already present.
class CoverIndex {
  public:
    CoverIndex(const Layout& layout, const MaskMatrix& programs, const MaskMatrix& states)
        : layout_(layout), programs_(programs), states_(states) {
        for (std::size_t k = 0; k < programs.rows(); ++k) {
            program_at_.emplace(key(programs.row(k), programs.words()), k);
        }
        for (std::size_t s = 0; s < states.rows(); ++s) {
            state_at_.emplace(states.row(s)[0], s);
        }
    }

    template <class F> void for_each_cover(std::size_t i, F&& visit) const {
        const std::size_t n_states = states_.rows();
        const std::size_t k = i / n_states;
        const std::size_t s = i % n_states;
        const std::uint64_t state = states_.row(s)[0];
        for (std::size_t v = 0; v < layout_.variables(); ++v) {
            const std::uint64_t bit = std::uint64_t{1} << v;
            if ((state & bit) == 0) {
                visit(k * n_states + state_at_.at(state | bit));
            }
        }
        std::vector<std::uint64_t> wider(programs_.row(k), programs_.row(k) + programs_.words());
        for (std::size_t node = 0; node < layout_.program_nodes(); ++node) {
            if (programs_.test(k, node)) {
                continue;
            }
            const auto parent = layout_.parent(node);
            if (parent && !programs_.test(k, *parent)) {
                continue;
            }
            wider[node / 64] |= std::uint64_t{1} << (node % 64);
            visit(program_at_.at(key(wider.data(), wider.size())) * n_states + s);
            wider[node / 64] &= ~(std::uint64_t{1} << (node % 64));
        }
    }

  private:
    static std::string key(const std::uint64_t* row, std::size_t words) {
        return {reinterpret_cast<const char*>(row), words * sizeof(std::uint64_t)};
    }

    const Layout& layout_;
    const MaskMatrix& programs_;
    const MaskMatrix& states_;
    std::unordered_map<std::string, std::size_t> program_at_;
    std::unordered_map<std::uint64_t, std::size_t> state_at_;
};

void copy_row(const MaskMatrix& from, std::size_t i, MaskMatrix& to, std::size_t k) {
    std::copy(from.row(i), from.row(i) + from.words(), to.row(k));
}

} // namespace

CheckReport check_connection(const Derivation& d, const CheckOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    const std::uint64_t p_size = downset_size(d.program, d.input);
    const std::uint64_t q_size = downset_size(d.output);
    const std::uint64_t product = saturating_mul(p_size, q_size);
    if (product > options.size_bound) {
        throw SizeExceeded(product, options.size_bound);
    }

    // P is kept factored: element i is (programs[i / |states|], states[i % |states|]).
    std::vector<PartialCommand> programs = enumerate_downset(d.program, options.size_bound);
    std::vector<PartialState> states = enumerate_downset(d.input, options.size_bound);
    std::vector<PartialState> qs = enumerate_downset(d.output, options.size_bound);
    if (options.shuffle_seed) {
        std::mt19937_64 rng(*options.shuffle_seed);
        std::shuffle(programs.begin(), programs.end(), rng);
        std::shuffle(states.begin(), states.end(), rng);
        std::shuffle(qs.begin(), qs.end(), rng);
    }
    const std::size_t n_states = states.size();
    const std::size_t n_p = programs.size() * n_states;
    const auto element = [&](std::size_t i) { return SliceOutcome{states[i % n_states], programs[i / n_states]}; };

    const Layout layout(d.program, d.input.domain());
    const std::size_t vars = d.output.size();
    MaskMatrix program_mask(programs.size(), layout.program_nodes());
    for (std::size_t k = 0; k < programs.size(); ++k) {
        layout.encode(programs[k], program_mask.row(k));
    }
    MaskMatrix state_mask(n_states, vars);
    for (std::size_t s = 0; s < n_states; ++s) {
        Layout::encode(states[s], state_mask.row(s));
    }

    MaskMatrix p_mask(n_p, layout.bits());
    MaskMatrix fwd_p_mask(n_p, vars);
    for (std::size_t k = 0; k < programs.size(); ++k) {
        for (std::size_t s = 0; s < n_states; ++s) {
            const std::size_t i = k * n_states + s;
            std::copy(program_mask.row(k), program_mask.row(k) + program_mask.words(), p_mask.row(i));
            for (std::size_t v = 0; v < vars; ++v) {
                if (state_mask.test(s, v)) {
                    p_mask.set(i, layout.program_nodes() + v);
                }
            }
            Layout::encode(fwd_cmd(d.trace, states[s], programs[k]), fwd_p_mask.row(i));
        }
    }
    const auto fwd_at = [&](std::size_t i) { return fwd_of(d, element(i)); };

    std::vector<SliceOutcome> bwd_q;
    std::vector<PartialState> fwd_bwd_q;
    bwd_q.reserve(qs.size());
    fwd_bwd_q.reserve(qs.size());
    for (const auto& q : qs) {
        bwd_q.push_back(bwd_cmd(d.trace, q));
        fwd_bwd_q.push_back(fwd_of(d, bwd_q.back()));
    }
    MaskMatrix q_mask(qs.size(), vars);
    MaskMatrix bwd_q_mask(qs.size(), layout.bits());
    MaskMatrix fwd_bwd_q_mask(qs.size(), vars);
    for (std::size_t j = 0; j < qs.size(); ++j) {
        Layout::encode(qs[j], q_mask.row(j));
        layout.encode(bwd_q[j], bwd_q_mask.row(j));
        Layout::encode(fwd_bwd_q[j], fwd_bwd_q_mask.row(j));
    }
    const OutputIndex q_index(q_mask);

    const kernels::Backend backend = kernels::usable(options.backend.value_or(kernels::default_backend()));
    CheckReport report;
    report.derivation_id = options.derivation_id;
    report.input_lattice_size = n_p;
    report.output_lattice_size = qs.size();
    report.kernel = kernels::to_string(backend);

    {
        LawVerdict v{"fwd_monotone", 0, std::nullopt, "all pairs"};
        std::optional<kernels::Violation> violation;
        if (n_p <= options.all_pairs_limit) {
            const auto scan = kernels::monotone_scan(p_mask, fwd_p_mask, backend);
            v.checked = scan.related;
            violation = scan.violation;
        } else {
            // Every comparable pair is a chain of covers, so checking covers
            // alone is exhaustive.
            v.method = "covering pairs";
            const CoverIndex covers(layout, program_mask, state_mask);
            for (std::size_t i = 0; i < n_p; ++i) {
                covers.for_each_cover(i, [&](std::size_t j) {
                    ++v.checked;
                    if (!violation && (fwd_p_mask.row(i)[0] & ~fwd_p_mask.row(j)[0]) != 0) {
                        violation = kernels::Violation{i, j};
                    }
                });
            }
        }
        if (violation) {
            const auto [i, j] = *violation;
            v.counterexample = show(element(i)) + " ⊑ " + show(element(j)) + " but fwd gives " + show(fwd_at(i)) +
                               " ⋢ " + show(fwd_at(j));
        }
        report.laws.push_back(std::move(v));
    }
    {
        const auto scan = kernels::monotone_scan(q_mask, bwd_q_mask, backend);
        LawVerdict v{"bwd_monotone", scan.related, std::nullopt, "all pairs"};
        if (scan.violation) {
            const auto [i, j] = *scan.violation;
            v.counterexample = show(qs[i]) + " ⊑ " + show(qs[j]) + " but bwd gives " + show(bwd_q[i]) + " ⋢ " +
                               show(bwd_q[j]);
        }
        report.laws.push_back(std::move(v));
    }

    // bwd(fwd(p)) for every p, looked up through the index of Q.
    std::vector<std::size_t> fwd_p_at(n_p);
    MaskMatrix bwd_fwd_p_mask(n_p, layout.bits());
    for (std::size_t i = 0; i < n_p; ++i) {
        fwd_p_at[i] = q_index(fwd_p_mask.row(i));
        copy_row(bwd_q_mask, fwd_p_at[i], bwd_fwd_p_mask, i);
    }
    {
        LawVerdict v{"deflation", n_p, std::nullopt, "elements"};
        if (const auto i = kernels::first_non_subset(bwd_fwd_p_mask, p_mask, backend)) {
            v.counterexample =
                "bwd(fwd(" + show(element(*i)) + ")) = " + show(bwd_q[fwd_p_at[*i]]) + " ⋢ " + show(element(*i));
        }
        report.laws.push_back(std::move(v));
    }
    const auto inflation_failure = kernels::first_non_subset(q_mask, fwd_bwd_q_mask, backend);
    {
        LawVerdict v{"inflation", qs.size(), std::nullopt, "elements"};
        if (inflation_failure) {
            const std::size_t j = *inflation_failure;
            v.counterexample = show(qs[j]) + " ⋢ fwd(bwd(q)) = " + show(fwd_bwd_q[j]);
        }
        report.laws.push_back(std::move(v));
    }

    const auto adjunction = kernels::adjunction_scan(p_mask, fwd_p_mask, q_mask, bwd_q_mask, backend);
    const std::uint64_t all_pairs = static_cast<std::uint64_t>(n_p) * qs.size();
    {
        LawVerdict v{"galois_equivalence", all_pairs, std::nullopt, "all pairs"};
        if (adjunction.unsound) {
            const auto [i, j] = *adjunction.unsound;
            v.counterexample = "bwd(" + show(qs[j]) + ") = " + show(bwd_q[j]) + " ⊑ " + show(element(i)) +
                               " but fwd(p) = " + show(fwd_at(i)) + " does not cover q";
        } else if (adjunction.not_least) {
            const auto [i, j] = *adjunction.not_least;
            v.counterexample = show(qs[j]) + " ⊑ fwd(" + show(element(i)) + ") = " + show(fwd_at(i)) +
                               " but bwd(q) = " + show(bwd_q[j]) + " ⋢ p";
        }
        report.laws.push_back(std::move(v));
    }
    {
        LawVerdict v{"minimality", all_pairs, std::nullopt, "all pairs"};
        if (inflation_failure) {
            const std::size_t j = *inflation_failure;
            v.counterexample = "bwd(" + show(qs[j]) + ") = " + show(bwd_q[j]) + " does not reproduce q";
        } else if (adjunction.not_least) {
            const auto [i, j] = *adjunction.not_least;
            v.counterexample =
                show(element(i)) + " reproduces " + show(qs[j]) + " but is not above bwd(q) = " + show(bwd_q[j]);
        }
        report.laws.push_back(std::move(v));
    }
    {
        LawVerdict v{"fwd_bwd_fwd", n_p, std::nullopt, "elements"};
        for (std::size_t i = 0; i < n_p && !v.counterexample; ++i) {
            const std::size_t j = fwd_p_at[i];
            if (!rows_equal(fwd_bwd_q_mask.row(j), fwd_p_mask.row(i), fwd_p_mask.words())) {
                v.counterexample =
                    "fwd(bwd(fwd(" + show(element(i)) + "))) = " + show(fwd_bwd_q[j]) + " ≠ " + show(fwd_at(i));
            }
        }
        report.laws.push_back(std::move(v));
    }
    {
        LawVerdict v{"bwd_fwd_bwd", qs.size(), std::nullopt, "elements"};
        for (std::size_t j = 0; j < qs.size() && !v.counterexample; ++j) {
            const std::size_t k = q_index(fwd_bwd_q_mask.row(j));
            if (!rows_equal(bwd_q_mask.row(k), bwd_q_mask.row(j), bwd_q_mask.words())) {
                v.counterexample = "bwd(fwd(bwd(" + show(qs[j]) + "))) = " + show(bwd_q[k]) + " ≠ " + show(bwd_q[j]);
            }
        }
        report.laws.push_back(std::move(v));
    }

    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

namespace {

void validate_criterion(const Derivation& d, const PartialState& criterion) {
    if (!criterion.same_domain(d.output)) {
        throw Error(ErrorKind::lattice_mismatch,
                    "criterion '" + render(criterion) + "' does not have the output domain (" + render(d.output) + ")");
    }
    if (!leq(criterion, partialize(d.output))) {
        throw Error(ErrorKind::criterion_mismatch,
                    "criterion '" + render(criterion) + "' is not a prefix of the output (" + render(d.output) + ")");
    }
}

SliceOutcome least_reproducing(const std::vector<SliceOutcome>& ps, const std::vector<PartialState>& fwd_ps,
                               const PartialState& criterion) {
    const SliceOutcome* least = nullptr;
    std::vector<const SliceOutcome*> reproducing;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (!leq(criterion, fwd_ps[i])) {
            continue;
        }
        reproducing.push_back(&ps[i]);
        if (least == nullptr || leq(ps[i], *least)) {
            least = &ps[i];
        }
    }
    if (least == nullptr) {
        throw std::logic_error("no element of the input lattice reproduces " + show(criterion));
    }
    for (const SliceOutcome* p : reproducing) {
        if (!leq(*least, *p)) {
            throw std::logic_error("elements reproducing " + show(criterion) + " have no least one: " + show(*least) +
                                   " and " + show(*p));
        }
    }
    return *least;
}

std::vector<PartialState> forward_images(const Derivation& d, const std::vector<SliceOutcome>& ps) {
    std::vector<PartialState> out;
    out.reserve(ps.size());
    for (const auto& p : ps) {
        out.push_back(fwd_of(d, p));
    }
    return out;
}

} // namespace

SliceOutcome oracle_bwd(const Derivation& d, const PartialState& criterion, std::uint64_t size_bound) {
    validate_criterion(d, criterion);
    const std::vector<SliceOutcome> ps = enumerate_downset(d.program, d.input, size_bound);
    return least_reproducing(ps, forward_images(d, ps), criterion);
}

std::vector<SliceOutcome> oracle_bwd_all(const Derivation& d, std::uint64_t size_bound) {
    const std::vector<PartialState> qs = enumerate_downset(d.output, size_bound);
    const std::vector<SliceOutcome> ps = enumerate_downset(d.program, d.input, size_bound);
    const std::vector<PartialState> fwd_ps = forward_images(d, ps);
    std::vector<SliceOutcome> out;
    out.reserve(qs.size());
    for (const auto& q : qs) {
        out.push_back(least_reproducing(ps, fwd_ps, q));
    }
    return out;
}

std::vector<MinimalPair> minimal_pairs(const Derivation& d, std::uint64_t size_bound, PairView view) {
    const std::vector<PartialState> qs = enumerate_downset(d.output, size_bound);
    const PartialCommand top = partialize(d.program);
    std::vector<MinimalPair> pairs;
    std::set<std::string> seen;
    for (const auto& q : qs) {
        SliceOutcome p = bwd_cmd(d.trace, q);
        if (view == PairView::state_only) {
            p.program_slice = top;
        }
        PartialState out = fwd_of(d, p);
        SliceOutcome again = bwd_cmd(d.trace, out);
        if (view == PairView::state_only) {
            again.program_slice = top;
        }
        if (!(again == p)) {
            throw std::logic_error("bwd∘fwd∘bwd differs from bwd at " + show(q));
        }
        if (seen.insert(show(p) + show(out)).second) {
            pairs.push_back({std::move(p), std::move(out)});
        }
    }
    return pairs;
}

} // namespace impslice

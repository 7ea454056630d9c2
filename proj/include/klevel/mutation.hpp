#pragma once

namespace klevel::testing {

/// Fault-injection switch used by the mutation-sensitivity checks. Each value
/// flips exactly one comparison inside a core predicate so the verification
/// suite can demonstrate it would notice. Production code always runs with
/// `none`; the switch exists only so tests can prove the checks have teeth.
enum class Mutation {
    none,
    level_strictness,    // level(): strict below becomes below-or-on
    corridor_ray_closure, // line_in_corridor(): constant constraint >= 0 becomes > 0
    wedge_combiner,      // in_wedge(): symmetric difference becomes union
    wedge_orientation,   // in_wedge(): first curve's upper side inverted
    housing_rule,        // build_gamma(): membership z_b > z_a becomes z_b < z_a
};

inline Mutation& active_mutation() {
    static Mutation m = Mutation::none;
    return m;
}

/// RAII guard for enabling a mutation inside a single test.
class ScopedMutation {
public:
    explicit ScopedMutation(Mutation m) : prev_(active_mutation()) { active_mutation() = m; }
    ~ScopedMutation() { active_mutation() = prev_; }
    ScopedMutation(const ScopedMutation&) = delete;
    ScopedMutation& operator=(const ScopedMutation&) = delete;

private:
    Mutation prev_;
};

} // namespace klevel::testing

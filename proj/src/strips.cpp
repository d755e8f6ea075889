#include "graphlift/strips.hpp"

#include <algorithm>
#include <sstream>

namespace graphlift {

namespace {

std::uint64_t atom_key(int predicate, const std::vector<int>& objects) {
    std::uint64_t h = fnv1a64(&predicate, sizeof predicate);
    for (int o : objects) h = fnv1a64(&o, sizeof o, h);
    return h;
}

void check_literal(const SchemaLiteral& lit, const ActionSchema& schema,
                   const std::vector<Predicate>& predicates, const std::string& where) {
    int arity;
    if (lit.predicate == kNeqPredicate) {
        arity = 2;
    } else if (lit.predicate >= 0 && lit.predicate < static_cast<int>(predicates.size())) {
        arity = predicates[static_cast<std::size_t>(lit.predicate)].arity;
    } else {
        throw invalid_input("schema " + schema.name + ": unknown predicate id in " + where);
    }
    if (static_cast<int>(lit.args.size()) != arity)
        throw invalid_input("schema " + schema.name + ": arity mismatch in " + where);
    for (int a : lit.args)
        if (a < 0 || a >= schema.param_count)
            throw invalid_input("schema " + schema.name + ": parameter index out of range in " + where);
}

void sort_unique(std::vector<SchemaLiteral>& lits, const std::string& schema,
                 const std::string& where) {
    std::sort(lits.begin(), lits.end());
    if (std::adjacent_find(lits.begin(), lits.end()) != lits.end())
        throw invalid_input("schema " + schema + ": duplicate literal in " + where);
    // No (predicate,args) pair with both polarities inside one set. A schema
    // that both adds and deletes the same atom is rejected as ill-formed.
    for (std::size_t i = 0; i + 1 < lits.size(); ++i)
        if (lits[i].predicate == lits[i + 1].predicate && lits[i].args == lits[i + 1].args)
            throw invalid_input("schema " + schema + ": contradictory polarities in " + where);
}

}  // namespace

int Domain::predicate_id(const std::string& n) const {
    if (n == "neq") return kNeqPredicate;
    for (std::size_t i = 0; i < predicates.size(); ++i)
        if (predicates[i].name == n) return static_cast<int>(i);
    return -2;
}

int Domain::schema_id(const std::string& n) const {
    for (std::size_t i = 0; i < schemas.size(); ++i)
        if (schemas[i].name == n) return static_cast<int>(i);
    return -1;
}

std::vector<bool> Domain::static_predicates() const {
    std::vector<bool> is_static(predicates.size(), true);
    for (const auto& s : schemas)
        for (const auto& l : s.eff)
            if (l.predicate >= 0) is_static[static_cast<std::size_t>(l.predicate)] = false;
    return is_static;
}

void Domain::canonicalize_and_validate() {
    for (std::size_t i = 0; i < predicates.size(); ++i) {
        if (predicates[i].arity < 0) throw invalid_input("negative arity: " + predicates[i].name);
        if (predicates[i].name == "neq") throw invalid_input("predicate name 'neq' is reserved");
        for (std::size_t j = i + 1; j < predicates.size(); ++j)
            if (predicates[i].name == predicates[j].name)
                throw invalid_input("duplicate predicate name: " + predicates[i].name);
    }
    for (std::size_t i = 0; i < schemas.size(); ++i)
        for (std::size_t j = i + 1; j < schemas.size(); ++j)
            if (schemas[i].name == schemas[j].name)
                throw invalid_input("duplicate schema name: " + schemas[i].name);

    for (auto& s : schemas) {
        if (s.param_count < 0) throw invalid_input("schema " + s.name + ": negative parameter count");
        for (const auto& l : s.static_pre) check_literal(l, s, predicates, "static precondition");
        for (const auto& l : s.pre) check_literal(l, s, predicates, "precondition");
        for (const auto& l : s.eff) {
            check_literal(l, s, predicates, "effect");
            if (l.predicate == kNeqPredicate)
                throw invalid_input("schema " + s.name + ": neq cannot appear in effects");
        }
        sort_unique(s.static_pre, s.name, "static precondition");
        sort_unique(s.pre, s.name, "precondition");
        sort_unique(s.eff, s.name, "effect");
    }

    auto is_static = static_predicates();
    for (const auto& s : schemas)
        for (const auto& l : s.static_pre)
            if (l.predicate >= 0 && !is_static[static_cast<std::size_t>(l.predicate)])
                throw invalid_input("schema " + s.name + ": static precondition on predicate '" +
                                    predicates[static_cast<std::size_t>(l.predicate)].name +
                                    "' which appears in an effect");
    if (!schemas.empty()) {
        bool any_eff = false;
        for (const auto& s : schemas) any_eff = any_eff || !s.eff.empty();
        if (!any_eff) throw invalid_input("domain has schemas but no schema has effects");
    }
}

int Instance::object_id(const std::string& n) const {
    auto it = std::lower_bound(objects.begin(), objects.end(), n);
    if (it == objects.end() || *it != n) return -1;
    return static_cast<int>(it - objects.begin());
}

void Instance::canonicalize_and_validate(const Domain& domain) {
    std::vector<std::string> sorted = objects;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw invalid_input("duplicate object name");
    if (sorted != objects) {
        // Remap atom object ids to the sorted order.
        std::vector<int> remap(objects.size());
        for (std::size_t i = 0; i < objects.size(); ++i) {
            auto it = std::lower_bound(sorted.begin(), sorted.end(), objects[i]);
            remap[i] = static_cast<int>(it - sorted.begin());
        }
        for (auto* set : {&init, &goal})
            for (auto& a : *set)
                for (auto& o : a.objects) o = remap[static_cast<std::size_t>(o)];
        objects = std::move(sorted);
    }
    auto check_atoms = [&](std::vector<GroundAtom>& atoms, const std::string& where) {
        for (const auto& a : atoms) {
            if (a.predicate == kNeqPredicate)
                throw invalid_input("neq atoms are built in and cannot appear in " + where);
            if (a.predicate < 0 || a.predicate >= static_cast<int>(domain.predicates.size()))
                throw invalid_input("unknown predicate in " + where);
            const auto& p = domain.predicates[static_cast<std::size_t>(a.predicate)];
            if (static_cast<int>(a.objects.size()) != p.arity)
                throw invalid_input("arity mismatch for " + p.name + " in " + where);
            for (int o : a.objects)
                if (o < 0 || o >= static_cast<int>(objects.size()))
                    throw invalid_input("unknown object in " + where);
        }
        std::sort(atoms.begin(), atoms.end());
        atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    };
    check_atoms(init, "init");
    check_atoms(goal, "goal");
}

std::vector<GroundAction> ground(const Domain& domain, const Instance& instance) {
    GroundedTask task(domain, instance);
    return task.actions();
}

GroundedTask::GroundedTask(const Domain& domain, const Instance& instance)
    : domain_(&domain), instance_(&instance) {
    const int nobj = static_cast<int>(instance.objects.size());

    // Atom table: every ground atom of every declared predicate, sorted.
    for (int p = 0; p < static_cast<int>(domain.predicates.size()); ++p) {
        const int arity = domain.predicates[static_cast<std::size_t>(p)].arity;
        if (arity > 0 && nobj == 0) continue;
        std::vector<int> tuple(static_cast<std::size_t>(arity), 0);
        while (true) {
            atoms_.push_back(GroundAtom{p, tuple});
            int i = arity - 1;
            while (i >= 0 && ++tuple[static_cast<std::size_t>(i)] == nobj) {
                tuple[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i < 0) break;
        }
    }
    std::sort(atoms_.begin(), atoms_.end());
    atom_index_.reserve(atoms_.size() * 2);
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        atom_index_.emplace(atom_key(atoms_[i].predicate, atoms_[i].objects), static_cast<int>(i));

    auto is_static_pred = domain.static_predicates();
    static_atom_.resize(atoms_.size());
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        static_atom_[i] = is_static_pred[static_cast<std::size_t>(atoms_[i].predicate)];

    init_ = BitVec(atoms_.size());
    for (const auto& a : instance.init) init_.set(static_cast<std::size_t>(atom_id(a)));
    for (const auto& a : instance.goal) goal_ids_.push_back(atom_id(a));

    // Ground actions: all bindings, pruned by static preconditions (checked
    // against init) and by effect collisions under the binding.
    std::vector<int> schema_order(domain.schemas.size());
    for (std::size_t i = 0; i < schema_order.size(); ++i) schema_order[i] = static_cast<int>(i);
    std::sort(schema_order.begin(), schema_order.end(), [&](int a, int b) {
        return domain.schemas[static_cast<std::size_t>(a)].name <
               domain.schemas[static_cast<std::size_t>(b)].name;
    });

    for (int si : schema_order) {
        const auto& schema = domain.schemas[static_cast<std::size_t>(si)];
        std::vector<int> binding(static_cast<std::size_t>(schema.param_count), 0);
        if (schema.param_count > 0 && nobj == 0) continue;
        while (true) {
            GroundAction ga;
            ga.schema = si;
            ga.binding = binding;
            bool ok = true;
            auto ground_lit = [&](const SchemaLiteral& l) {
                std::vector<int> objs(l.args.size());
                for (std::size_t i = 0; i < l.args.size(); ++i)
                    objs[i] = binding[static_cast<std::size_t>(l.args[i])];
                return objs;
            };
            for (const auto& l : schema.static_pre) {
                if (l.predicate == kNeqPredicate) {
                    auto objs = ground_lit(l);
                    bool neq = objs[0] != objs[1];
                    if (neq != l.positive) { ok = false; break; }
                    continue;
                }
                int id = atom_id(GroundAtom{l.predicate, ground_lit(l)});
                if (init_.test(static_cast<std::size_t>(id)) != l.positive) { ok = false; break; }
                (l.positive ? ga.pre_pos : ga.pre_neg).push_back(id);
            }
            if (ok) {
                for (const auto& l : schema.pre) {
                    int id = atom_id(GroundAtom{l.predicate, ground_lit(l)});
                    (l.positive ? ga.pre_pos : ga.pre_neg).push_back(id);
                }
                for (const auto& l : schema.eff) {
                    int id = atom_id(GroundAtom{l.predicate, ground_lit(l)});
                    (l.positive ? ga.add : ga.del).push_back(id);
                }
                // A binding that both adds and deletes the same atom is an
                // inconsistent instantiation; skip it.
                std::sort(ga.add.begin(), ga.add.end());
                std::sort(ga.del.begin(), ga.del.end());
                ga.add.erase(std::unique(ga.add.begin(), ga.add.end()), ga.add.end());
                ga.del.erase(std::unique(ga.del.begin(), ga.del.end()), ga.del.end());
                std::vector<int> both;
                std::set_intersection(ga.add.begin(), ga.add.end(), ga.del.begin(), ga.del.end(),
                                      std::back_inserter(both));
                if (both.empty()) {
                    std::sort(ga.pre_pos.begin(), ga.pre_pos.end());
                    ga.pre_pos.erase(std::unique(ga.pre_pos.begin(), ga.pre_pos.end()), ga.pre_pos.end());
                    std::sort(ga.pre_neg.begin(), ga.pre_neg.end());
                    ga.pre_neg.erase(std::unique(ga.pre_neg.begin(), ga.pre_neg.end()), ga.pre_neg.end());
                    // Contradictory ground precondition (q and not-q) can arise
                    // from distinct literals under a collapsing binding; such
                    // instantiations are never applicable.
                    std::vector<int> clash;
                    std::set_intersection(ga.pre_pos.begin(), ga.pre_pos.end(),
                                          ga.pre_neg.begin(), ga.pre_neg.end(),
                                          std::back_inserter(clash));
                    if (clash.empty()) actions_.push_back(std::move(ga));
                }
            }
            int i = schema.param_count - 1;
            while (i >= 0 && ++binding[static_cast<std::size_t>(i)] == nobj) {
                binding[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i < 0) break;
        }
    }
}

int GroundedTask::atom_id(const GroundAtom& a) const {
    auto it = atom_index_.find(atom_key(a.predicate, a.objects));
    if (it == atom_index_.end()) throw internal_error("unknown ground atom");
    return it->second;
}

std::string GroundedTask::atom_name(int id) const {
    const auto& a = atoms_[static_cast<std::size_t>(id)];
    std::string s = domain_->predicates[static_cast<std::size_t>(a.predicate)].name;
    if (!a.objects.empty()) {
        s += "(";
        for (std::size_t i = 0; i < a.objects.size(); ++i) {
            if (i) s += ",";
            s += instance_->objects[static_cast<std::size_t>(a.objects[i])];
        }
        s += ")";
    }
    return s;
}

std::string GroundedTask::action_name(const GroundAction& a) const {
    std::string s = domain_->schemas[static_cast<std::size_t>(a.schema)].name;
    s += "(";
    for (std::size_t i = 0; i < a.binding.size(); ++i) {
        if (i) s += ",";
        s += instance_->objects[static_cast<std::size_t>(a.binding[i])];
    }
    s += ")";
    return s;
}

bool GroundedTask::is_goal(const State& s) const {
    if (!goal_defined()) throw invalid_input("instance '" + instance_->name + "' has no goal");
    for (int id : goal_ids_)
        if (!s.test(static_cast<std::size_t>(id))) return false;
    return true;
}

State GroundedTask::state_from_atoms(const std::vector<GroundAtom>& atoms) const {
    State s(atoms_.size());
    for (const auto& a : atoms) s.set(static_cast<std::size_t>(atom_id(a)));
    return s;
}

std::vector<GroundAtom> GroundedTask::state_atoms(const State& s) const {
    std::vector<GroundAtom> out;
    s.for_each_set([&](std::size_t i) { out.push_back(atoms_[i]); });
    return out;
}

bool GroundedTask::applicable(const State& s, const GroundAction& a) const {
    for (int id : a.pre_pos)
        if (!s.test(static_cast<std::size_t>(id))) return false;
    for (int id : a.pre_neg)
        if (s.test(static_cast<std::size_t>(id))) return false;
    return true;
}

State GroundedTask::apply(const State& s, const GroundAction& a) const {
    State r = s;
    for (int id : a.del) r.reset(static_cast<std::size_t>(id));
    for (int id : a.add) r.set(static_cast<std::size_t>(id));
    return r;
}

}  // namespace graphlift

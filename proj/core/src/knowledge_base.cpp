#include "crisim/knowledge_base.hpp"

#include <algorithm>

#include "crisim/error.hpp"
#include "crisim/record.hpp"

namespace crisim {

namespace {

std::set<Triple>::const_iterator subject_begin(const std::set<Triple>& triples,
                                               std::string_view subject) {
    return triples.lower_bound(Triple{std::string(subject), std::string(), Qualitative{}});
}

}  // namespace

KnowledgeBase::KnowledgeBase(Taxonomy taxonomy) : taxonomy_(std::move(taxonomy)) {}

const TaxonomyNode& KnowledgeBase::class_node(const ObjectValue& object) const {
    const auto& text = std::get<Qualitative>(object).text;
    const auto* node = taxonomy_.find_by_label(text);
    if (!node || node->label != text)
        throw SchemaViolation("class reference does not name a taxonomy node: " + text);
    return *node;
}

bool KnowledgeBase::insert(const Triple& t) {
    if (t.subject.empty()) throw SchemaViolation("triple subject must be non-empty");
    const auto& schema = Schema::instance();
    const auto* spec = schema.find(t.predicate);
    if (!spec) throw SchemaViolation("undeclared predicate: " + t.predicate);
    if (auto why = schema.check(*spec, t.object); !why.empty())
        throw SchemaViolation(std::string(local_name(t.predicate)) + " " + why);
    if (spec->type == ValueType::ClassRef) class_node(t.object);
    if (t.predicate == vocab::kSubClassOf) {
        const auto sub = local_name(t.subject);
        if (t.subject != class_iri(sub) || !taxonomy_.contains(sub))
            throw SchemaViolation("subClassOf subject is not a taxonomy class: " + t.subject);
    }

    const bool added = triples_.insert(t).second;
    if (added) ++predicate_index_[t.predicate][t.subject];
    return added;
}

void KnowledgeBase::insert(const TripleSet& set) {
    for (const auto& t : set.triples) insert(t);
}

std::size_t KnowledgeBase::remove_subject(std::string_view subject) {
    std::size_t removed = 0;
    auto it = subject_begin(triples_, subject);
    while (it != triples_.end() && it->subject == subject) {
        auto pit = predicate_index_.find(it->predicate);
        if (auto sit = pit->second.find(it->subject); --sit->second == 0) pit->second.erase(sit);
        if (pit->second.empty()) predicate_index_.erase(pit);
        it = triples_.erase(it);
        ++removed;
    }
    return removed;
}

void KnowledgeBase::assert_taxonomy() {
    for (const auto& node : taxonomy_.nodes()) {
        if (!node.parent) continue;
        insert(Triple{class_iri(node.id), vocab::kSubClassOf,
                      Qualitative{taxonomy_.node(*node.parent).label}});
    }
}

std::vector<Triple> KnowledgeBase::by_subject(std::string_view subject) const {
    std::vector<Triple> out;
    for (auto it = subject_begin(triples_, subject); it != triples_.end() && it->subject == subject;
         ++it)
        out.push_back(*it);
    return out;
}

std::vector<Triple> KnowledgeBase::by_predicate(std::string_view predicate) const {
    std::vector<Triple> out;
    const auto pit = predicate_index_.find(predicate);
    if (pit == predicate_index_.end()) return out;
    for (const auto& [subject, count] : pit->second) {
        for (auto it = subject_begin(triples_, subject); it != triples_.end() && it->subject == subject;
             ++it)
            if (it->predicate == predicate) out.push_back(*it);
    }
    return out;
}

bool KnowledgeBase::has_crisis(std::string_view crisis_id) const {
    const auto pit = predicate_index_.find(vocab::kType);
    return pit != predicate_index_.end() && pit->second.contains(crisis_iri(crisis_id));
}

std::vector<std::string> KnowledgeBase::crisis_ids() const {
    std::vector<std::string> ids;
    const auto pit = predicate_index_.find(vocab::kType);
    if (pit == predicate_index_.end()) return ids;
    for (const auto& [subject, count] : pit->second)
        if (subject.starts_with(ns::kKb)) ids.push_back(subject.substr(ns::kKb.size()));
    std::sort(ids.begin(), ids.end());
    return ids;
}

TripleSet KnowledgeBase::crisis_subgraph(std::string_view crisis_id) const {
    if (!has_crisis(crisis_id)) throw UnknownCrisis(std::string(crisis_id));
    TripleSet out{std::string(crisis_id), by_subject(crisis_iri(crisis_id))};
    std::sort(out.triples.begin(), out.triples.end(), canonical_less);
    return out;
}

const TaxonomyNode& KnowledgeBase::crisis_type(std::string_view crisis_id) const {
    const auto iri = crisis_iri(crisis_id);
    for (auto it = subject_begin(triples_, iri); it != triples_.end() && it->subject == iri; ++it)
        if (it->predicate == vocab::kType) return class_node(it->object);
    throw UnknownCrisis(std::string(crisis_id));
}

KbStats KnowledgeBase::stats() const {
    KbStats s;
    s.statements = triples_.size();

    std::set<std::string> classes;
    if (const auto it = predicate_index_.find(vocab::kSubClassOf); it != predicate_index_.end()) {
        for (const auto& t : by_predicate(vocab::kSubClassOf)) {
            classes.insert(std::string(local_name(t.subject)));
            classes.insert(class_node(t.object).id);
        }
    }
    if (const auto it = predicate_index_.find(vocab::kType); it != predicate_index_.end()) {
        s.individuals = it->second.size();
        for (const auto& t : by_predicate(vocab::kType)) classes.insert(class_node(t.object).id);
    }
    s.classes = classes.size();

    const auto& schema = Schema::instance();
    for (const auto& [predicate, subjects] : predicate_index_) {
        if (schema.find(predicate)->object_property)
            ++s.object_properties;
        else
            ++s.data_properties;
    }
    return s;
}

std::vector<std::string> KnowledgeBase::list_crises(const CrisisFilter& filter) const {
    std::vector<std::string> out;
    for (const auto& id : crisis_ids()) {
        if (filter.type && !(taxonomy_.contains(*filter.type) &&
                             taxonomy_.is_ancestor_or_self(*filter.type, crisis_type(id).id)))
            continue;

        const auto triples = by_subject(crisis_iri(id));
        const auto find = [&](const std::string& predicate) -> const ObjectValue* {
            for (const auto& t : triples)
                if (t.predicate == predicate) return &t.object;
            return nullptr;
        };
        if (filter.country) {
            const auto* v = find(vocab::kCountry);
            if (!v || fold_label(std::get<Qualitative>(*v).text) != fold_label(*filter.country))
                continue;
        }
        if (filter.years) {
            const auto* v = find(vocab::kStartDate);
            if (!v) continue;
            const auto day = static_cast<std::int64_t>(std::get<Quantitative>(*v).values.at(0));
            const int year = PartialDate::from_epoch_day(day).year;
            if (year < filter.years->first || year > filter.years->second) continue;
        }
        out.push_back(id);
    }
    return out;
}

}  // namespace crisim

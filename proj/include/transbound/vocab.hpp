#ifndef TRANSBOUND_VOCAB_HPP
#define TRANSBOUND_VOCAB_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "transbound/errors.hpp"

namespace transbound {

using EntityId = std::uint32_t;
using RelationId = std::uint32_t;

// Bijective name <-> id maps for entities and relations. Ids are contiguous,
// assigned in first-appearance order so runs are deterministic.
class Vocabulary {
public:
    EntityId intern_entity(const std::string& name) {
        auto it = entity_ids_.find(name);
        if (it != entity_ids_.end()) return it->second;
        EntityId id = static_cast<EntityId>(entity_names_.size());
        entity_ids_.emplace(name, id);
        entity_names_.push_back(name);
        return id;
    }

    RelationId intern_relation(const std::string& name) {
        auto it = relation_ids_.find(name);
        if (it != relation_ids_.end()) return it->second;
        RelationId id = static_cast<RelationId>(relation_names_.size());
        relation_ids_.emplace(name, id);
        relation_names_.push_back(name);
        return id;
    }

    std::optional<EntityId> entity_id(const std::string& name) const {
        auto it = entity_ids_.find(name);
        if (it == entity_ids_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<RelationId> relation_id(const std::string& name) const {
        auto it = relation_ids_.find(name);
        if (it == relation_ids_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& entity_name(EntityId id) const {
        if (id >= entity_names_.size()) throw VocabError("entity id out of range");
        return entity_names_[id];
    }

    const std::string& relation_name(RelationId id) const {
        if (id >= relation_names_.size()) throw VocabError("relation id out of range");
        return relation_names_[id];
    }

    std::size_t num_entities() const { return entity_names_.size(); }
    std::size_t num_relations() const { return relation_names_.size(); }

private:
    std::unordered_map<std::string, EntityId> entity_ids_;
    std::unordered_map<std::string, RelationId> relation_ids_;
    std::vector<std::string> entity_names_;
    std::vector<std::string> relation_names_;
};

} // namespace transbound

#endif

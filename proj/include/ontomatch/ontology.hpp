#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ontomatch {

enum class EntityKind : std::uint8_t { Class, Property, Instance };
enum class PropertyKind : std::uint8_t { Object, Datatype };

std::string_view to_string(EntityKind kind);

struct ClassDecl {
    std::string id;
    std::optional<std::string> label;
    std::optional<std::string> comment;
    std::vector<std::string> superclasses;

    bool operator==(const ClassDecl&) const = default;
};

struct PropertyDecl {
    std::string id;
    std::optional<std::string> label;
    std::optional<std::string> comment;
    PropertyKind kind = PropertyKind::Datatype;
    std::optional<std::string> domain;
    // Class identifier for object properties, free-form datatype tag otherwise.
    std::optional<std::string> range;

    bool operator==(const PropertyDecl&) const = default;
};

struct PropertyValue {
    std::string property;
    // Instance identifier when `property` is an object property, literal text
    // otherwise.
    std::string value;

    bool operator==(const PropertyValue&) const = default;
};

struct InstanceDecl {
    std::string id;
    std::optional<std::string> label;
    std::optional<std::string> comment;
    std::vector<std::string> types;
    std::vector<PropertyValue> values;

    bool operator==(const InstanceDecl&) const = default;
};

// Position of an entity inside its kind's declaration list.
struct EntityRef {
    EntityKind kind = EntityKind::Class;
    std::size_t index = 0;

    bool operator==(const EntityRef&) const = default;
};

struct StructuralProfile {
    std::uint32_t sup = 0;
    std::uint32_t sub = 0;
    std::uint32_t depth = 1;
    std::uint32_t ins = 0;
    std::uint32_t prop = 0;
    std::uint32_t sib = 0;

    bool operator==(const StructuralProfile&) const = default;
};

// Lookup tables derived from the declarations. All per-class vectors are
// indexed by class position and hold positions in declaration order.
struct OntologyIndex {
    std::unordered_map<std::string, EntityRef> by_id;
    std::vector<std::vector<std::size_t>> superclasses;
    std::vector<std::vector<std::size_t>> subclasses;
    std::vector<std::vector<std::size_t>> instances_of;
    std::vector<std::vector<std::size_t>> properties_of;
    std::vector<std::uint32_t> depth;

    bool operator==(const OntologyIndex&) const = default;
};

// Validates the declarations and derives the index. Throws
// DuplicateIdentifierError, DanglingReferenceError, SubclassCycleError or
// SchemaError.
OntologyIndex build_index(const std::vector<ClassDecl>& classes,
                          const std::vector<PropertyDecl>& properties,
                          const std::vector<InstanceDecl>& instances);

// Immutable, fully indexed ontology. Entities are laid out for similarity
// matrices as all classes, then all properties, then all instances, each in
// declaration order.
class Ontology {
public:
    Ontology(std::string name, std::vector<ClassDecl> classes,
             std::vector<PropertyDecl> properties,
             std::vector<InstanceDecl> instances);

    const std::string& name() const noexcept { return name_; }
    const std::vector<ClassDecl>& classes() const noexcept { return classes_; }
    const std::vector<PropertyDecl>& properties() const noexcept { return properties_; }
    const std::vector<InstanceDecl>& instances() const noexcept { return instances_; }
    const OntologyIndex& index() const noexcept { return index_; }

    std::size_t entity_count() const noexcept {
        return classes_.size() + properties_.size() + instances_.size();
    }
    EntityRef entity_at(std::size_t position) const;
    std::size_t position_of(EntityRef ref) const;
    EntityKind kind_at(std::size_t position) const { return entity_at(position).kind; }
    const std::string& id_of(EntityRef ref) const;
    const std::string& id_at(std::size_t position) const { return id_of(entity_at(position)); }
    std::optional<std::string> label_of(EntityRef ref) const;
    std::optional<std::string> comment_of(EntityRef ref) const;
    std::vector<std::string> entity_ids() const;

    std::optional<EntityRef> find(std::string_view id) const;
    // Throws UnknownEntityError.
    EntityRef resolve(std::string_view id) const;
    // Throws UnknownEntityError or WrongKindError.
    std::size_t class_index(std::string_view id) const;

    std::span<const std::size_t> direct_superclasses(std::size_t cls) const;
    std::span<const std::size_t> direct_subclasses(std::size_t cls) const;
    std::span<const std::size_t> direct_instances(std::size_t cls) const;
    std::span<const std::size_t> declared_properties(std::size_t cls) const;
    std::uint32_t depth(std::size_t cls) const { return index_.depth.at(cls); }

    // Matrix positions of every entity one relation away from `position`
    // (subclass, domain, range, type and entity-valued property links, both
    // directions). Sorted, without duplicates.
    std::vector<std::size_t> neighbors(std::size_t position) const;

    bool operator==(const Ontology& other) const {
        return name_ == other.name_ && classes_ == other.classes_ &&
               properties_ == other.properties_ && instances_ == other.instances_;
    }

private:
    std::string name_;
    std::vector<ClassDecl> classes_;
    std::vector<PropertyDecl> properties_;
    std::vector<InstanceDecl> instances_;
    OntologyIndex index_;
};

Ontology parse_ontology(std::string_view source);
std::string serialize_ontology(const Ontology& ont);
Ontology load_ontology(const std::filesystem::path& path);
void save_ontology(const Ontology& ont, const std::filesystem::path& path);

StructuralProfile structural_profile(const Ontology& ont, std::string_view class_id);
StructuralProfile structural_profile(const Ontology& ont, std::size_t cls);
std::uint32_t depth_of(const Ontology& ont, std::string_view class_id);
std::vector<std::string> siblings_of(const Ontology& ont, std::string_view class_id);
std::vector<std::size_t> sibling_indices(const Ontology& ont, std::size_t cls);

// Shared file helpers; throw IoError.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace ontomatch

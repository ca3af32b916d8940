#include "ontomatch/ontology.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ontomatch/errors.hpp"

namespace ontomatch {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(EntityKind kind) {
    switch (kind) {
        case EntityKind::Class: return "class";
        case EntityKind::Property: return "property";
        case EntityKind::Instance: return "instance";
    }
    return "?";
}

namespace {

void register_id(OntologyIndex& idx, const std::string& id, EntityRef ref) {
    if (id.empty()) {
        throw SchemaError("empty " + std::string(to_string(ref.kind)) + " identifier");
    }
    auto [it, inserted] = idx.by_id.emplace(id, ref);
    if (!inserted) {
        throw DuplicateIdentifierError("duplicate identifier '" + id + "'");
    }
}

EntityRef require(const OntologyIndex& idx, const std::string& id, const std::string& context) {
    auto it = idx.by_id.find(id);
    if (it == idx.by_id.end()) {
        throw DanglingReferenceError(context + " refers to unknown identifier '" + id + "'");
    }
    return it->second;
}

std::size_t require_class(const OntologyIndex& idx, const std::string& id,
                          const std::string& context) {
    EntityRef ref = require(idx, id, context);
    if (ref.kind != EntityKind::Class) {
        throw DanglingReferenceError(context + " expects a class but '" + id + "' is a " +
                                     std::string(to_string(ref.kind)));
    }
    return ref.index;
}

}  // namespace

OntologyIndex build_index(const std::vector<ClassDecl>& classes,
                          const std::vector<PropertyDecl>& properties,
                          const std::vector<InstanceDecl>& instances) {
    OntologyIndex idx;
    for (std::size_t i = 0; i < classes.size(); ++i)
        register_id(idx, classes[i].id, {EntityKind::Class, i});
    for (std::size_t i = 0; i < properties.size(); ++i)
        register_id(idx, properties[i].id, {EntityKind::Property, i});
    for (std::size_t i = 0; i < instances.size(); ++i)
        register_id(idx, instances[i].id, {EntityKind::Instance, i});

    const std::size_t n = classes.size();
    idx.superclasses.assign(n, {});
    idx.subclasses.assign(n, {});
    idx.instances_of.assign(n, {});
    idx.properties_of.assign(n, {});

    for (std::size_t c = 0; c < n; ++c) {
        const ClassDecl& decl = classes[c];
        std::set<std::string> seen;
        for (const std::string& sup : decl.superclasses) {
            if (sup == decl.id) {
                throw SubclassCycleError("class '" + decl.id + "' lists itself as superclass");
            }
            if (!seen.insert(sup).second) {
                throw SchemaError("class '" + decl.id + "' lists superclass '" + sup + "' twice");
            }
            std::size_t parent = require_class(idx, sup, "superclass of '" + decl.id + "'");
            idx.superclasses[c].push_back(parent);
            idx.subclasses[parent].push_back(c);
        }
    }

    for (std::size_t p = 0; p < properties.size(); ++p) {
        const PropertyDecl& decl = properties[p];
        if (decl.domain) {
            std::size_t cls = require_class(idx, *decl.domain, "domain of '" + decl.id + "'");
            idx.properties_of[cls].push_back(p);
        }
        if (decl.range && decl.kind == PropertyKind::Object) {
            require_class(idx, *decl.range, "range of '" + decl.id + "'");
        }
    }

    for (std::size_t i = 0; i < instances.size(); ++i) {
        const InstanceDecl& decl = instances[i];
        if (decl.types.empty()) {
            throw SchemaError("instance '" + decl.id + "' has no types");
        }
        std::set<std::string> seen;
        for (const std::string& type : decl.types) {
            if (!seen.insert(type).second) {
                throw SchemaError("instance '" + decl.id + "' lists type '" + type + "' twice");
            }
            std::size_t cls = require_class(idx, type, "type of '" + decl.id + "'");
            idx.instances_of[cls].push_back(i);
        }
        for (const PropertyValue& v : decl.values) {
            EntityRef prop = require(idx, v.property, "value of '" + decl.id + "'");
            if (prop.kind != EntityKind::Property) {
                throw DanglingReferenceError("value of '" + decl.id + "' uses '" + v.property +
                                             "', which is not a property");
            }
            if (properties[prop.index].kind == PropertyKind::Object) {
                EntityRef target = require(idx, v.value, "object value of '" + decl.id + "'");
                if (target.kind != EntityKind::Instance) {
                    throw DanglingReferenceError("object value of '" + decl.id +
                                                 "' must name an instance, got '" + v.value + "'");
                }
            }
        }
    }

    // Kahn's order over the superclass relation; depth = 1 + min parent depth.
    idx.depth.assign(n, 0);
    std::vector<std::size_t> pending(n);
    std::vector<std::size_t> ready;
    for (std::size_t c = 0; c < n; ++c) {
        pending[c] = idx.superclasses[c].size();
        if (pending[c] == 0) ready.push_back(c);
    }
    std::size_t processed = 0;
    while (!ready.empty()) {
        std::size_t c = ready.back();
        ready.pop_back();
        ++processed;
        std::uint32_t depth = 1;
        if (!idx.superclasses[c].empty()) {
            std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
            for (std::size_t parent : idx.superclasses[c]) best = std::min(best, idx.depth[parent]);
            depth = best + 1;
        }
        idx.depth[c] = depth;
        for (std::size_t child : idx.subclasses[c]) {
            if (--pending[child] == 0) ready.push_back(child);
        }
    }
    if (processed != n) {
        for (std::size_t c = 0; c < n; ++c) {
            if (pending[c] != 0) {
                throw SubclassCycleError("subclass cycle through class '" + classes[c].id + "'");
            }
        }
    }
    return idx;
}

Ontology::Ontology(std::string name, std::vector<ClassDecl> classes,
                   std::vector<PropertyDecl> properties, std::vector<InstanceDecl> instances)
    : name_(std::move(name)),
      classes_(std::move(classes)),
      properties_(std::move(properties)),
      instances_(std::move(instances)),
      index_(build_index(classes_, properties_, instances_)) {}

EntityRef Ontology::entity_at(std::size_t position) const {
    if (position < classes_.size()) return {EntityKind::Class, position};
    position -= classes_.size();
    if (position < properties_.size()) return {EntityKind::Property, position};
    position -= properties_.size();
    if (position < instances_.size()) return {EntityKind::Instance, position};
    throw UnknownEntityError("entity position out of range");
}

std::size_t Ontology::position_of(EntityRef ref) const {
    switch (ref.kind) {
        case EntityKind::Class: return ref.index;
        case EntityKind::Property: return classes_.size() + ref.index;
        case EntityKind::Instance: return classes_.size() + properties_.size() + ref.index;
    }
    return 0;
}

const std::string& Ontology::id_of(EntityRef ref) const {
    switch (ref.kind) {
        case EntityKind::Class: return classes_.at(ref.index).id;
        case EntityKind::Property: return properties_.at(ref.index).id;
        case EntityKind::Instance: break;
    }
    return instances_.at(ref.index).id;
}

std::optional<std::string> Ontology::label_of(EntityRef ref) const {
    switch (ref.kind) {
        case EntityKind::Class: return classes_.at(ref.index).label;
        case EntityKind::Property: return properties_.at(ref.index).label;
        case EntityKind::Instance: break;
    }
    return instances_.at(ref.index).label;
}

std::optional<std::string> Ontology::comment_of(EntityRef ref) const {
    switch (ref.kind) {
        case EntityKind::Class: return classes_.at(ref.index).comment;
        case EntityKind::Property: return properties_.at(ref.index).comment;
        case EntityKind::Instance: break;
    }
    return instances_.at(ref.index).comment;
}

std::vector<std::string> Ontology::entity_ids() const {
    std::vector<std::string> ids;
    ids.reserve(entity_count());
    for (const auto& c : classes_) ids.push_back(c.id);
    for (const auto& p : properties_) ids.push_back(p.id);
    for (const auto& i : instances_) ids.push_back(i.id);
    return ids;
}

std::optional<EntityRef> Ontology::find(std::string_view id) const {
    auto it = index_.by_id.find(std::string(id));
    if (it == index_.by_id.end()) return std::nullopt;
    return it->second;
}

EntityRef Ontology::resolve(std::string_view id) const {
    auto ref = find(id);
    if (!ref) throw UnknownEntityError("unknown identifier '" + std::string(id) + "'");
    return *ref;
}

std::size_t Ontology::class_index(std::string_view id) const {
    EntityRef ref = resolve(id);
    if (ref.kind != EntityKind::Class) {
        throw WrongKindError("'" + std::string(id) + "' is a " + std::string(to_string(ref.kind)) +
                             ", not a class");
    }
    return ref.index;
}

std::span<const std::size_t> Ontology::direct_superclasses(std::size_t cls) const {
    return index_.superclasses.at(cls);
}
std::span<const std::size_t> Ontology::direct_subclasses(std::size_t cls) const {
    return index_.subclasses.at(cls);
}
std::span<const std::size_t> Ontology::direct_instances(std::size_t cls) const {
    return index_.instances_of.at(cls);
}
std::span<const std::size_t> Ontology::declared_properties(std::size_t cls) const {
    return index_.properties_of.at(cls);
}

std::vector<std::size_t> Ontology::neighbors(std::size_t position) const {
    const EntityRef ref = entity_at(position);
    std::vector<std::size_t> out;
    auto add = [&](EntityRef r) { out.push_back(position_of(r)); };

    switch (ref.kind) {
        case EntityKind::Class: {
            for (std::size_t c : direct_superclasses(ref.index)) add({EntityKind::Class, c});
            for (std::size_t c : direct_subclasses(ref.index)) add({EntityKind::Class, c});
            for (std::size_t i : direct_instances(ref.index)) add({EntityKind::Instance, i});
            const std::string& id = classes_[ref.index].id;
            for (std::size_t p = 0; p < properties_.size(); ++p) {
                const PropertyDecl& decl = properties_[p];
                bool linked = decl.domain == id ||
                              (decl.kind == PropertyKind::Object && decl.range == id);
                if (linked) add({EntityKind::Property, p});
            }
            break;
        }
        case EntityKind::Property: {
            const PropertyDecl& decl = properties_[ref.index];
            if (decl.domain) add(resolve(*decl.domain));
            if (decl.range && decl.kind == PropertyKind::Object) add(resolve(*decl.range));
            break;
        }
        case EntityKind::Instance: {
            const InstanceDecl& decl = instances_[ref.index];
            for (const std::string& t : decl.types) add(resolve(t));
            auto is_object = [&](const std::string& prop) {
                return properties_[resolve(prop).index].kind == PropertyKind::Object;
            };
            for (const PropertyValue& v : decl.values) {
                if (is_object(v.property)) add(resolve(v.value));
            }
            for (std::size_t other = 0; other < instances_.size(); ++other) {
                for (const PropertyValue& v : instances_[other].values) {
                    if (v.value == decl.id && is_object(v.property)) {
                        add({EntityKind::Instance, other});
                    }
                }
            }
            break;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    // Self links (an instance valued by itself) are not neighbors.
    std::erase(out, position);
    return out;
}

// ---------------------------------------------------------------------------
// Interchange format

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    byte = std::min(byte, text.size());
    for (std::size_t i = 0; i < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw SchemaError("unknown key '" + key + "' in " + where);
        }
    }
}

const json& require_key(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError("missing key '" + std::string(key) + "' in " + where);
    return *it;
}

std::string as_string(const json& value, const std::string& where) {
    if (!value.is_string()) throw SchemaError(where + " must be a string");
    return value.get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const char* key,
                                           const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) return std::nullopt;
    return as_string(*it, where + "." + key);
}

std::vector<std::string> string_array(const json& value, const std::string& where) {
    if (!value.is_array()) throw SchemaError(where + " must be an array");
    std::vector<std::string> out;
    for (const json& v : value) out.push_back(as_string(v, where + "[]"));
    return out;
}

const json& object_array(const json& root, const char* key) {
    static const json empty = json::array();
    auto it = root.find(key);
    if (it == root.end()) return empty;
    if (!it->is_array()) throw SchemaError(std::string(key) + " must be an array");
    return *it;
}

void require_object(const json& v, const std::string& where) {
    if (!v.is_object()) throw SchemaError(where + " must be an object");
}

}  // namespace

Ontology parse_ontology(std::string_view source) {
    json root;
    try {
        root = json::parse(source.begin(), source.end());
    } catch (const json::parse_error& e) {
        auto [line, column] = line_column(source, e.byte == 0 ? 0 : e.byte - 1);
        throw SyntaxError("invalid JSON", line, column);
    }
    require_object(root, "ontology document");
    reject_unknown_keys(root, {"name", "classes", "properties", "instances"}, "ontology");
    std::string name = as_string(require_key(root, "name", "ontology"), "name");

    std::vector<ClassDecl> classes;
    for (const json& c : object_array(root, "classes")) {
        require_object(c, "class");
        reject_unknown_keys(c, {"id", "label", "comment", "superclasses"}, "class");
        ClassDecl decl;
        decl.id = as_string(require_key(c, "id", "class"), "class.id");
        decl.label = optional_string(c, "label", "class");
        decl.comment = optional_string(c, "comment", "class");
        decl.superclasses = string_array(require_key(c, "superclasses", "class '" + decl.id + "'"),
                                         "class.superclasses");
        classes.push_back(std::move(decl));
    }

    std::vector<PropertyDecl> properties;
    for (const json& p : object_array(root, "properties")) {
        require_object(p, "property");
        reject_unknown_keys(p, {"id", "label", "comment", "kind", "domain", "range"}, "property");
        PropertyDecl decl;
        decl.id = as_string(require_key(p, "id", "property"), "property.id");
        decl.label = optional_string(p, "label", "property");
        decl.comment = optional_string(p, "comment", "property");
        std::string kind = as_string(require_key(p, "kind", "property '" + decl.id + "'"),
                                     "property.kind");
        if (kind == "object") {
            decl.kind = PropertyKind::Object;
        } else if (kind == "datatype") {
            decl.kind = PropertyKind::Datatype;
        } else {
            throw SchemaError("property '" + decl.id + "' has unknown kind '" + kind + "'");
        }
        decl.domain = optional_string(p, "domain", "property");
        decl.range = optional_string(p, "range", "property");
        properties.push_back(std::move(decl));
    }

    std::vector<InstanceDecl> instances;
    for (const json& i : object_array(root, "instances")) {
        require_object(i, "instance");
        reject_unknown_keys(i, {"id", "label", "comment", "types", "values"}, "instance");
        InstanceDecl decl;
        decl.id = as_string(require_key(i, "id", "instance"), "instance.id");
        decl.label = optional_string(i, "label", "instance");
        decl.comment = optional_string(i, "comment", "instance");
        decl.types = string_array(require_key(i, "types", "instance '" + decl.id + "'"),
                                  "instance.types");
        const json& values = require_key(i, "values", "instance '" + decl.id + "'");
        if (!values.is_array()) throw SchemaError("instance.values must be an array");
        for (const json& v : values) {
            require_object(v, "property value");
            reject_unknown_keys(v, {"property", "value"}, "property value");
            decl.values.push_back({as_string(require_key(v, "property", "value"), "property"),
                                   as_string(require_key(v, "value", "value"), "value")});
        }
        instances.push_back(std::move(decl));
    }

    return Ontology(std::move(name), std::move(classes), std::move(properties),
                    std::move(instances));
}

std::string serialize_ontology(const Ontology& ont) {
    auto describe = [](ordered_json& obj, const auto& decl) {
        obj["id"] = decl.id;
        if (decl.label) obj["label"] = *decl.label;
        if (decl.comment) obj["comment"] = *decl.comment;
    };

    ordered_json root;
    root["name"] = ont.name();
    root["classes"] = ordered_json::array();
    for (const ClassDecl& c : ont.classes()) {
        ordered_json obj;
        describe(obj, c);
        obj["superclasses"] = c.superclasses;
        root["classes"].push_back(std::move(obj));
    }
    root["properties"] = ordered_json::array();
    for (const PropertyDecl& p : ont.properties()) {
        ordered_json obj;
        describe(obj, p);
        obj["kind"] = p.kind == PropertyKind::Object ? "object" : "datatype";
        if (p.domain) obj["domain"] = *p.domain;
        if (p.range) obj["range"] = *p.range;
        root["properties"].push_back(std::move(obj));
    }
    root["instances"] = ordered_json::array();
    for (const InstanceDecl& i : ont.instances()) {
        ordered_json obj;
        describe(obj, i);
        obj["types"] = i.types;
        obj["values"] = ordered_json::array();
        for (const PropertyValue& v : i.values) {
            obj["values"].push_back({{"property", v.property}, {"value", v.value}});
        }
        root["instances"].push_back(std::move(obj));
    }
    return root.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

Ontology load_ontology(const std::filesystem::path& path) {
    return parse_ontology(read_text_file(path));
}

void save_ontology(const Ontology& ont, const std::filesystem::path& path) {
    write_text_file(path, serialize_ontology(ont));
}

// ---------------------------------------------------------------------------
// Structural accessors

std::vector<std::size_t> sibling_indices(const Ontology& ont, std::size_t cls) {
    std::vector<std::size_t> out;
    auto parents = ont.direct_superclasses(cls);
    if (parents.empty()) {
        for (std::size_t c = 0; c < ont.classes().size(); ++c) {
            if (c != cls && ont.direct_superclasses(c).empty()) out.push_back(c);
        }
        return out;
    }
    for (std::size_t parent : parents) {
        for (std::size_t child : ont.direct_subclasses(parent)) {
            if (child != cls) out.push_back(child);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::string> siblings_of(const Ontology& ont, std::string_view class_id) {
    std::vector<std::string> out;
    for (std::size_t c : sibling_indices(ont, ont.class_index(class_id))) {
        out.push_back(ont.classes()[c].id);
    }
    return out;
}

std::uint32_t depth_of(const Ontology& ont, std::string_view class_id) {
    return ont.depth(ont.class_index(class_id));
}

StructuralProfile structural_profile(const Ontology& ont, std::size_t cls) {
    auto count = [](std::size_t n) { return static_cast<std::uint32_t>(n); };
    StructuralProfile p;
    p.sup = count(ont.direct_superclasses(cls).size());
    p.sub = count(ont.direct_subclasses(cls).size());
    p.depth = ont.depth(cls);
    p.ins = count(ont.direct_instances(cls).size());
    p.prop = count(ont.declared_properties(cls).size());
    p.sib = count(sibling_indices(ont, cls).size());
    return p;
}

StructuralProfile structural_profile(const Ontology& ont, std::string_view class_id) {
    return structural_profile(ont, ont.class_index(class_id));
}

}  // namespace ontomatch

//! Subtyping queries over whatever class metadata is available.

use std::collections::{BTreeSet, VecDeque};

use super::types::{Primitive, TypeDesc, JAVA_LANG_OBJECT};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassShape {
    pub superclass: Option<String>,
    pub interfaces: Vec<String>,
    pub is_interface: bool,
}

pub trait ClassHierarchy {
    /// Direct supertypes of `name`, or `None` if the class is unknown.
    fn shape(&self, name: &str) -> Option<ClassShape>;
}

/// Knows nothing beyond the built-in JDK table.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoHierarchy;

impl ClassHierarchy for NoHierarchy {
    fn shape(&self, name: &str) -> Option<ClassShape> {
        jdk_shape(name)
    }
}

impl<T: ClassHierarchy + ?Sized> ClassHierarchy for &T {
    fn shape(&self, name: &str) -> Option<ClassShape> {
        (**self).shape(name)
    }
}

// (class, superclass, interfaces, is_interface)
const JDK: &[(&str, &str, &[&str], bool)] = &[
    ("java/lang/Object", "", &[], false),
    ("java/io/Serializable", "", &[], true),
    ("java/lang/Comparable", "", &[], true),
    ("java/lang/CharSequence", "", &[], true),
    ("java/lang/Cloneable", "", &[], true),
    ("java/lang/Runnable", "", &[], true),
    ("java/lang/AutoCloseable", "", &[], true),
    ("java/io/Closeable", "", &["java/lang/AutoCloseable"], true),
    ("java/lang/Iterable", "", &[], true),
    (
        "java/lang/String",
        "java/lang/Object",
        &["java/io/Serializable", "java/lang/Comparable", "java/lang/CharSequence"],
        false,
    ),
    (
        "java/lang/StringBuilder",
        "java/lang/Object",
        &["java/io/Serializable", "java/lang/CharSequence"],
        false,
    ),
    ("java/lang/Number", "java/lang/Object", &["java/io/Serializable"], false),
    (
        "java/lang/Integer",
        "java/lang/Number",
        &["java/lang/Comparable"],
        false,
    ),
    ("java/lang/Long", "java/lang/Number", &["java/lang/Comparable"], false),
    ("java/lang/Short", "java/lang/Number", &["java/lang/Comparable"], false),
    ("java/lang/Byte", "java/lang/Number", &["java/lang/Comparable"], false),
    ("java/lang/Double", "java/lang/Number", &["java/lang/Comparable"], false),
    ("java/lang/Float", "java/lang/Number", &["java/lang/Comparable"], false),
    (
        "java/lang/Boolean",
        "java/lang/Object",
        &["java/io/Serializable", "java/lang/Comparable"],
        false,
    ),
    (
        "java/lang/Character",
        "java/lang/Object",
        &["java/io/Serializable", "java/lang/Comparable"],
        false,
    ),
    ("java/lang/Class", "java/lang/Object", &["java/io/Serializable"], false),
    (
        "java/lang/Enum",
        "java/lang/Object",
        &["java/io/Serializable", "java/lang/Comparable"],
        false,
    ),
    (
        "java/lang/Throwable",
        "java/lang/Object",
        &["java/io/Serializable"],
        false,
    ),
    ("java/lang/Exception", "java/lang/Throwable", &[], false),
    ("java/lang/Error", "java/lang/Throwable", &[], false),
    ("java/lang/AssertionError", "java/lang/Error", &[], false),
    ("java/lang/RuntimeException", "java/lang/Exception", &[], false),
    (
        "java/lang/IllegalArgumentException",
        "java/lang/RuntimeException",
        &[],
        false,
    ),
    (
        "java/lang/IllegalStateException",
        "java/lang/RuntimeException",
        &[],
        false,
    ),
    (
        "java/lang/NullPointerException",
        "java/lang/RuntimeException",
        &[],
        false,
    ),
    (
        "java/lang/UnsupportedOperationException",
        "java/lang/RuntimeException",
        &[],
        false,
    ),
    (
        "java/lang/IndexOutOfBoundsException",
        "java/lang/RuntimeException",
        &[],
        false,
    ),
    ("java/io/IOException", "java/lang/Exception", &[], false),
    (
        "java/io/File",
        "java/lang/Object",
        &["java/io/Serializable", "java/lang/Comparable"],
        false,
    ),
    ("java/util/Collection", "", &["java/lang/Iterable"], true),
    ("java/util/List", "", &["java/util/Collection"], true),
    ("java/util/Set", "", &["java/util/Collection"], true),
    ("java/util/Queue", "", &["java/util/Collection"], true),
    ("java/util/Deque", "", &["java/util/Queue"], true),
    ("java/util/Map", "", &[], true),
    ("java/util/Iterator", "", &[], true),
    ("java/util/RandomAccess", "", &[], true),
    (
        "java/util/AbstractCollection",
        "java/lang/Object",
        &["java/util/Collection"],
        false,
    ),
    (
        "java/util/AbstractList",
        "java/util/AbstractCollection",
        &["java/util/List"],
        false,
    ),
    (
        "java/util/ArrayList",
        "java/util/AbstractList",
        &[
            "java/util/List",
            "java/util/RandomAccess",
            "java/lang/Cloneable",
            "java/io/Serializable",
        ],
        false,
    ),
    ("java/util/AbstractSequentialList", "java/util/AbstractList", &[], false),
    (
        "java/util/LinkedList",
        "java/util/AbstractSequentialList",
        &[
            "java/util/List",
            "java/util/Deque",
            "java/lang/Cloneable",
            "java/io/Serializable",
        ],
        false,
    ),
    (
        "java/util/AbstractSet",
        "java/util/AbstractCollection",
        &["java/util/Set"],
        false,
    ),
    (
        "java/util/HashSet",
        "java/util/AbstractSet",
        &["java/util/Set", "java/lang/Cloneable", "java/io/Serializable"],
        false,
    ),
    ("java/util/AbstractMap", "java/lang/Object", &["java/util/Map"], false),
    (
        "java/util/HashMap",
        "java/util/AbstractMap",
        &["java/util/Map", "java/lang/Cloneable", "java/io/Serializable"],
        false,
    ),
    (
        "java/util/TreeMap",
        "java/util/AbstractMap",
        &["java/util/Map", "java/lang/Cloneable", "java/io/Serializable"],
        false,
    ),
];

/// Shape of a well-known JDK class, used when the class is absent from the
/// analyzed project and its classpath.
pub fn jdk_shape(name: &str) -> Option<ClassShape> {
    JDK.iter()
        .find(|(n, ..)| *n == name)
        .map(|(_, sup, ifaces, is_interface)| ClassShape {
            superclass: if sup.is_empty() { None } else { Some(sup.to_string()) },
            interfaces: ifaces.iter().map(|s| s.to_string()).collect(),
            is_interface: *is_interface,
        })
}

/// All supertypes of `name` including itself and `java/lang/Object`.
/// The flag is false when some ancestor could not be resolved.
pub fn ancestors<H: ClassHierarchy + ?Sized>(h: &H, name: &str) -> (BTreeSet<String>, bool) {
    let mut seen = BTreeSet::new();
    let mut complete = true;
    let mut queue = VecDeque::from([name.to_string()]);
    while let Some(n) = queue.pop_front() {
        if !seen.insert(n.clone()) {
            continue;
        }
        if n == JAVA_LANG_OBJECT {
            continue;
        }
        match h.shape(&n) {
            Some(s) => {
                if let Some(sup) = s.superclass {
                    queue.push_back(sup);
                }
                queue.extend(s.interfaces);
            }
            None => complete = false,
        }
    }
    seen.insert(JAVA_LANG_OBJECT.to_string());
    (seen, complete)
}

pub fn is_subclass<H: ClassHierarchy + ?Sized>(h: &H, sub: &str, sup: &str) -> bool {
    sub == sup || sup == JAVA_LANG_OBJECT || ancestors(h, sub).0.contains(sup)
}

/// Assignability of a value of type `sub` to a slot declared `sup`.
/// Int-category primitives are interchangeable, matching JVM stack typing.
pub fn is_assignable<H: ClassHierarchy + ?Sized>(h: &H, sub: &TypeDesc, sup: &TypeDesc) -> bool {
    match (sub, sup) {
        (a, b) if a == b => true,
        (_, TypeDesc::Top) => true,
        (TypeDesc::Primitive { prim: a }, TypeDesc::Primitive { prim: b }) => {
            a.is_int_category() && b.is_int_category()
        }
        (TypeDesc::Null, b) => b.is_reference(),
        (TypeDesc::Object { name: a }, TypeDesc::Object { name: b }) => is_subclass(h, a, b),
        (TypeDesc::Array { .. }, TypeDesc::Object { name }) => matches!(
            name.as_str(),
            JAVA_LANG_OBJECT | "java/lang/Cloneable" | "java/io/Serializable"
        ),
        (TypeDesc::Array { element: a }, TypeDesc::Array { element: b }) => {
            if a.is_reference() && b.is_reference() {
                is_assignable(h, a, b)
            } else {
                a == b
            }
        }
        _ => false,
    }
}

/// Least upper bound of two types. Object types join to their unique
/// nearest common supertype, preferring the one class among several
/// candidates; remaining ambiguity widens to `java/lang/Object` and unknown
/// ancestry to `Top`.
pub fn join<H: ClassHierarchy + ?Sized>(h: &H, a: &TypeDesc, b: &TypeDesc) -> TypeDesc {
    if a == b {
        return a.clone();
    }
    match (a, b) {
        (TypeDesc::Primitive { prim: x }, TypeDesc::Primitive { prim: y })
            if x.is_int_category() && y.is_int_category() =>
        {
            TypeDesc::prim(Primitive::Int)
        }
        (TypeDesc::Null, r) | (r, TypeDesc::Null) if r.is_reference() => r.clone(),
        (TypeDesc::Object { name: x }, TypeDesc::Object { name: y }) => join_classes(h, x, y),
        (TypeDesc::Array { element: x }, TypeDesc::Array { element: y }) => {
            if x.is_reference() && y.is_reference() {
                match join(h, x, y) {
                    TypeDesc::Top => TypeDesc::object(JAVA_LANG_OBJECT),
                    e => TypeDesc::array(e),
                }
            } else {
                TypeDesc::object(JAVA_LANG_OBJECT)
            }
        }
        (TypeDesc::Array { .. }, TypeDesc::Object { .. }) | (TypeDesc::Object { .. }, TypeDesc::Array { .. }) => {
            TypeDesc::object(JAVA_LANG_OBJECT)
        }
        _ => TypeDesc::Top,
    }
}

fn join_classes<H: ClassHierarchy + ?Sized>(h: &H, x: &str, y: &str) -> TypeDesc {
    if is_subclass(h, x, y) {
        return TypeDesc::object(y);
    }
    if is_subclass(h, y, x) {
        return TypeDesc::object(x);
    }
    let (ax, cx) = ancestors(h, x);
    let (ay, cy) = ancestors(h, y);
    if !cx || !cy {
        return TypeDesc::Top;
    }
    let common: Vec<&String> = ax.intersection(&ay).collect();
    let minimal: Vec<&&String> = common
        .iter()
        .filter(|c| !common.iter().any(|d| d != *c && is_subclass(h, d, c)))
        .collect();
    if let [only] = minimal.as_slice() {
        return TypeDesc::object(only.as_str());
    }
    let classes: Vec<&&&String> = minimal
        .iter()
        .filter(|c| c.as_str() != JAVA_LANG_OBJECT)
        .filter(|c| h.shape(c).is_some_and(|s| !s.is_interface))
        .collect();
    match classes.as_slice() {
        [only] => TypeDesc::object(only.as_str()),
        _ => TypeDesc::object(JAVA_LANG_OBJECT),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn join_uses_shared_interface() {
        let t = join(
            &NoHierarchy,
            &TypeDesc::object("java/util/ArrayList"),
            &TypeDesc::object("java/util/LinkedList"),
        );
        assert_eq!(t, TypeDesc::object("java/util/AbstractList"));
        let t = join(
            &NoHierarchy,
            &TypeDesc::object("java/lang/Integer"),
            &TypeDesc::object("java/lang/String"),
        );
        // Serializable and Comparable are both minimal
        assert_eq!(t, TypeDesc::object(JAVA_LANG_OBJECT));
    }

    #[test]
    fn unknown_classes_join_to_top() {
        let t = join(&NoHierarchy, &TypeDesc::object("a/B"), &TypeDesc::object("a/C"));
        assert_eq!(t, TypeDesc::Top);
    }

    #[test]
    fn null_joins_to_reference() {
        let s = TypeDesc::object("java/lang/String");
        assert_eq!(join(&NoHierarchy, &TypeDesc::Null, &s), s);
        assert!(is_assignable(&NoHierarchy, &TypeDesc::Null, &s));
        assert!(!is_assignable(&NoHierarchy, &TypeDesc::Null, &TypeDesc::int()));
    }
}

//! Per-class symbol information and inheritance resolution.

use indexmap::IndexMap;

use super::TypeError;
use crate::frontend::ast::{MjType, Program, Span};

#[derive(Debug, Clone, PartialEq)]
pub struct MethodSig {
    pub name: String,
    pub params: Vec<MjType>,
    pub ret: MjType,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassInfo {
    pub name: String,
    pub superclass: Option<String>,
    pub fields: Vec<(String, MjType)>,
    pub methods: Vec<MethodSig>,
    pub span: Span,
}

impl ClassInfo {
    pub fn own_method(&self, name: &str) -> Option<&MethodSig> {
        self.methods.iter().find(|m| m.name == name)
    }

    pub fn own_field(&self, name: &str) -> Option<&MjType> {
        self.fields.iter().find(|(f, _)| f == name).map(|(_, t)| t)
    }
}

/// Class table for an acyclic, fully resolved inheritance graph.
///
/// Every class mentioned as a superclass exists and the superclass graph has
/// no cycles, so the ancestry walks below always terminate.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassTable {
    classes: IndexMap<String, ClassInfo>,
    main_class: String,
}

pub fn build_class_table(program: &Program) -> Result<ClassTable, Vec<TypeError>> {
    let mut errors = Vec::new();
    let mut classes: IndexMap<String, ClassInfo> = IndexMap::new();

    for decl in &program.classes {
        if decl.name == program.main.name || classes.contains_key(&decl.name) {
            errors.push(TypeError::new(decl.span.start, format!("duplicate class {}", decl.name)));
            continue;
        }
        let info = ClassInfo {
            name: decl.name.clone(),
            superclass: decl.superclass.clone(),
            fields: decl.fields.iter().map(|f| (f.name.clone(), f.ty.clone())).collect(),
            methods: decl
                .methods
                .iter()
                .map(|m| MethodSig {
                    name: m.name.clone(),
                    params: m.formals.iter().map(|f| f.ty.clone()).collect(),
                    ret: m.return_type.clone(),
                    span: m.span,
                })
                .collect(),
            span: decl.span,
        };
        classes.insert(decl.name.clone(), info);
    }

    for info in classes.values() {
        if let Some(sup) = &info.superclass {
            if !classes.contains_key(sup) {
                errors.push(TypeError::new(info.span.start, format!("unknown superclass {sup} of class {}", info.name)));
            }
        }
    }
    if errors.is_empty() {
        for info in classes.values() {
            let mut seen = vec![info.name.as_str()];
            let mut cur = info.superclass.as_deref();
            while let Some(c) = cur {
                if seen.contains(&c) {
                    errors.push(TypeError::new(
                        info.span.start,
                        format!("inheritance cycle through class {}", info.name),
                    ));
                    break;
                }
                seen.push(c);
                cur = classes[c].superclass.as_deref();
            }
        }
    }

    if errors.is_empty() {
        Ok(ClassTable { classes, main_class: program.main.name.clone() })
    } else {
        Err(errors)
    }
}

impl ClassTable {
    pub fn main_class(&self) -> &str {
        &self.main_class
    }

    pub fn get(&self, name: &str) -> Option<&ClassInfo> {
        self.classes.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.classes.contains_key(name)
    }

    /// Classes in declaration order.
    pub fn classes(&self) -> impl Iterator<Item = &ClassInfo> {
        self.classes.values()
    }

    fn info(&self, name: &str) -> &ClassInfo {
        self.classes.get(name).unwrap_or_else(|| panic!("class {name} not in table"))
    }

    /// Inheritance path from the root class down to `class`, inclusive.
    pub fn ancestry(&self, class: &str) -> Vec<&str> {
        let mut path = Vec::new();
        let mut cur = Some(self.info(class).name.as_str());
        while let Some(c) = cur {
            path.push(c);
            cur = self.info(c).superclass.as_deref();
        }
        path.reverse();
        path
    }

    pub fn root_of(&self, class: &str) -> &str {
        self.ancestry(class)[0]
    }

    /// Classes without a superclass, in declaration order.
    pub fn roots(&self) -> Vec<&str> {
        self.classes.values().filter(|c| c.superclass.is_none()).map(|c| c.name.as_str()).collect()
    }

    pub fn direct_subclasses(&self, class: &str) -> Vec<&str> {
        self.classes
            .values()
            .filter(|c| c.superclass.as_deref() == Some(class))
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn is_subclass(&self, sub: &str, sup: &str) -> bool {
        self.contains(sub) && self.ancestry(sub).contains(&sup)
    }

    /// Superclass fields first, then own fields; each with its declaring class.
    pub fn all_fields(&self, class: &str) -> Vec<(&str, &str, &MjType)> {
        self.ancestry(class)
            .into_iter()
            .flat_map(|c| self.info(c).fields.iter().map(move |(f, t)| (c, f.as_str(), t)))
            .collect()
    }

    /// Declaring class and type of a field visible in `class`.
    pub fn field(&self, class: &str, field: &str) -> Option<(&str, &MjType)> {
        self.ancestry(class)
            .into_iter()
            .rev()
            .find_map(|c| self.info(c).own_field(field).map(|t| (c, t)))
    }

    /// The class whose body implements `method` for instances of `class`:
    /// the innermost definition wins.
    pub fn method_impl(&self, class: &str, method: &str) -> Option<&str> {
        self.lookup_method(class, method).map(|(c, _)| c)
    }

    pub fn lookup_method(&self, class: &str, method: &str) -> Option<(&str, &MethodSig)> {
        self.ancestry(class)
            .into_iter()
            .rev()
            .find_map(|c| self.info(c).own_method(method).map(|m| (c, m)))
    }

    /// The outermost ancestor that declares `method`; its object tuple holds
    /// the method slot.
    pub fn method_origin(&self, class: &str, method: &str) -> Option<&str> {
        self.ancestry(class).into_iter().find(|c| self.info(c).own_method(method).is_some())
    }

    /// Methods first declared in `class` (not overriding an ancestor's), in
    /// declaration order.
    pub fn introduced_methods(&self, class: &str) -> Vec<&str> {
        let info = self.info(class);
        let inherited = |m: &str| match &info.superclass {
            Some(sup) => self.lookup_method(sup, m).is_some(),
            None => false,
        };
        info.methods.iter().map(|m| m.name.as_str()).filter(|m| !inherited(m)).collect()
    }

    /// Every method callable on `class`, ordered root-first by the class that
    /// introduces it, then by declaration order. A subclass's list extends
    /// its superclass's list.
    pub fn visible_methods(&self, class: &str) -> Vec<&str> {
        self.ancestry(class).into_iter().flat_map(|c| self.introduced_methods(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_source;

    const MAIN: &str = "class M{public static void main(String[] a){System.out.println(0);}}";

    fn table(classes: &str) -> Result<ClassTable, Vec<TypeError>> {
        build_class_table(&parse_source(&format!("{MAIN}\n{classes}")).unwrap())
    }

    #[test]
    fn subclasses_follow_declaration_order() {
        let t = table("class A {} class B extends A {} class C {} class D extends A {}").unwrap();
        assert_eq!(t.direct_subclasses("A"), vec!["B", "D"]);
        assert_eq!(t.roots(), vec!["A", "C"]);
        assert_eq!(t.ancestry("D"), vec!["A", "D"]);
        assert!(t.is_subclass("B", "A"));
        assert!(!t.is_subclass("A", "B"));
    }

    #[test]
    fn self_inheritance_is_a_cycle() {
        let errs = table("class C extends C {}").unwrap_err();
        assert!(errs[0].message.contains("inheritance cycle"));
        let errs = table("class A extends B {} class B extends A {}").unwrap_err();
        assert!(errs.iter().all(|e| e.message.contains("inheritance cycle")));
    }

    #[test]
    fn duplicate_and_unknown() {
        let errs = table("class A {} class A {}").unwrap_err();
        assert!(errs[0].message.contains("duplicate class"));
        let errs = table("class M {}").unwrap_err();
        assert!(errs[0].message.contains("duplicate class"));
        let errs = table("class A extends Z {}").unwrap_err();
        assert!(errs[0].message.contains("unknown superclass"));
    }

    #[test]
    fn method_resolution() {
        let t = table(
            "class A { int x; public int f() { return 1; } public int g() { return 2; } }
             class B extends A { int y; public int f() { return 3; } public int h() { return 4; } }
             class C extends B { public int g() { return 5; } }",
        )
        .unwrap();
        assert_eq!(t.method_impl("C", "f"), Some("B"));
        assert_eq!(t.method_impl("C", "g"), Some("C"));
        assert_eq!(t.method_impl("A", "h"), None);
        assert_eq!(t.method_origin("C", "g"), Some("A"));
        assert_eq!(t.method_origin("C", "h"), Some("B"));
        assert_eq!(t.visible_methods("C"), vec!["f", "g", "h"]);
        assert_eq!(t.introduced_methods("C"), Vec::<&str>::new());
        let fields: Vec<_> = t.all_fields("C").into_iter().map(|(c, f, _)| (c, f)).collect();
        assert_eq!(fields, vec![("A", "x"), ("B", "y")]);
        assert_eq!(t.field("C", "x").map(|(c, _)| c), Some("A"));
    }
}

//! Runtime encoding of heap values and objects.
//!
//! The heap is an association list from object ids to `heapval`s. Arrays
//! are `HArr of int list`. An object of class D whose root class is R is
//! `C_R (level)`, where each level is the tuple
//!
//! ```text
//! (methods introduced at this class, fields declared here, extension)
//! ```
//!
//! and the extension slot is `NONE` at D itself, or
//! `SOME (X_<next class on the path to D> (next level))` above it. A class
//! without subclasses has a `unit option` extension slot. Methods live at
//! the level of the class that introduces them, so a superclass-typed
//! projection sees the same positions in every subclass instance.

use crate::frontend::ast::MjType;
use crate::ml::{ConDecl, DataDecl, MlExpr, MlPat, MlType};
use crate::sema::ClassTable;

pub const HEAPVAL: &str = "heapval";
pub const ARRAY_CON: &str = "HArr";
/// Encoded null pointer; allocated ids start at 0.
pub const NULL_ID: i64 = -1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slot {
    Method(String),
    Field(String),
    Extension,
}

pub fn root_constructor(class: &str) -> String {
    format!("C_{class}")
}

pub fn extension_constructor(class: &str) -> String {
    format!("X_{class}")
}

pub fn extension_type(class: &str) -> String {
    format!("ext_{class}")
}

pub fn method_function(class: &str, method: &str) -> String {
    format!("meth_{class}'{method}")
}

pub fn constructor_function(class: &str) -> String {
    format!("new_{class}")
}

/// `int * (int * heapval) list`: allocation counter and heap.
pub fn state_type() -> MlType {
    MlType::Tuple(vec![MlType::Int, MlType::list(MlType::Tuple(vec![MlType::Int, MlType::Named(HEAPVAL.into())]))])
}

pub fn value_type(ty: &MjType) -> MlType {
    match ty {
        MjType::Int => MlType::Int,
        MjType::Boolean => MlType::Bool,
        MjType::IntArray | MjType::ClassRef(_) => MlType::Int,
    }
}

pub fn default_value(ty: &MjType) -> MlExpr {
    match ty {
        MjType::Int => MlExpr::Int(0),
        MjType::Boolean => MlExpr::Bool(false),
        MjType::IntArray | MjType::ClassRef(_) => MlExpr::Int(NULL_ID),
    }
}

pub struct Layout<'t> {
    table: &'t ClassTable,
}

impl<'t> Layout<'t> {
    pub fn new(table: &'t ClassTable) -> Self {
        Layout { table }
    }

    /// Slots stored at `class`'s level of the nested tuple.
    pub fn level_slots(&self, class: &str) -> Vec<Slot> {
        let info = self.table.get(class).expect("class in table");
        let mut slots: Vec<Slot> =
            self.table.introduced_methods(class).into_iter().map(|m| Slot::Method(m.to_string())).collect();
        slots.extend(info.fields.iter().map(|(f, _)| Slot::Field(f.clone())));
        slots.push(Slot::Extension);
        slots
    }

    fn slot_type(&self, class: &str, slot: &Slot) -> MlType {
        match slot {
            Slot::Method(m) => {
                let (_, sig) = self.table.lookup_method(class, m).expect("method in table");
                let mut args = vec![state_type(), MlType::Int];
                args.extend(sig.params.iter().map(value_type));
                MlType::arrow(MlType::Tuple(args), MlType::Tuple(vec![state_type(), value_type(&sig.ret)]))
            }
            Slot::Field(f) => value_type(self.table.field(class, f).expect("field in table").1),
            Slot::Extension => {
                if self.table.direct_subclasses(class).is_empty() {
                    MlType::option(MlType::Unit)
                } else {
                    MlType::option(MlType::Named(extension_type(class)))
                }
            }
        }
    }

    pub fn level_type(&self, class: &str) -> MlType {
        MlType::tuple(self.level_slots(class).iter().map(|s| self.slot_type(class, s)).collect())
    }

    /// The datatype group: `heapval` plus one extension sum per class that
    /// has subclasses.
    pub fn datatypes(&self) -> Vec<DataDecl> {
        let mut heapval = vec![ConDecl { name: ARRAY_CON.into(), arg: Some(MlType::list(MlType::Int)) }];
        for root in self.table.roots() {
            heapval.push(ConDecl { name: root_constructor(root), arg: Some(self.level_type(root)) });
        }
        let mut decls = vec![DataDecl { name: HEAPVAL.into(), params: vec![], constructors: heapval }];
        for class in self.table.classes() {
            let subs = self.table.direct_subclasses(&class.name);
            if subs.is_empty() {
                continue;
            }
            decls.push(DataDecl {
                name: extension_type(&class.name),
                params: vec![],
                constructors: subs
                    .into_iter()
                    .map(|s| ConDecl { name: extension_constructor(s), arg: Some(self.level_type(s)) })
                    .collect(),
            });
        }
        decls
    }

    /// Which level of `class`'s ancestry holds `slot`.
    pub fn owner_of(&self, class: &str, slot: &Slot) -> Option<String> {
        match slot {
            Slot::Method(m) => self.table.method_origin(class, m).map(str::to_string),
            Slot::Field(f) => self.table.field(class, f).map(|(c, _)| c.to_string()),
            Slot::Extension => Some(class.to_string()),
        }
    }

    /// A pattern matching any heap value whose class descends from `level`,
    /// binding `slot` of that level to `var`.
    pub fn select_pattern(&self, level: &str, slot: &Slot, var: &str) -> MlPat {
        let path = self.table.ancestry(level);
        let mut inner: Option<MlPat> = None;
        for (depth, class) in path.iter().enumerate().rev() {
            let slots = self.level_slots(class);
            let items = slots
                .iter()
                .map(|s| {
                    if depth == path.len() - 1 {
                        if s == slot {
                            MlPat::var(var)
                        } else {
                            MlPat::Wild
                        }
                    } else if *s == Slot::Extension {
                        let below = inner.take().expect("deeper level built first");
                        MlPat::con("SOME", Some(MlPat::con(extension_constructor(path[depth + 1]), Some(below))))
                    } else {
                        MlPat::Wild
                    }
                })
                .collect();
            inner = Some(MlPat::tuple(items));
        }
        MlPat::con(root_constructor(path[0]), inner)
    }

    /// A pattern binding every slot along the path to `level`, and the
    /// expression rebuilding the same value with `slot` replaced by `value`.
    pub fn rebuild(&self, level: &str, slot: &Slot, value: MlExpr) -> (MlPat, MlExpr) {
        let path = self.table.ancestry(level);
        let mut inner: Option<(MlPat, MlExpr)> = None;
        let mut value = Some(value);
        for (depth, class) in path.iter().enumerate().rev() {
            let slots = self.level_slots(class);
            let mut pats = Vec::with_capacity(slots.len());
            let mut exprs = Vec::with_capacity(slots.len());
            for (k, s) in slots.iter().enumerate() {
                let name = format!("o{depth}_{k}");
                if depth == path.len() - 1 && s == slot {
                    pats.push(MlPat::Wild);
                    exprs.push(value.take().expect("slot occurs once"));
                } else if depth < path.len() - 1 && *s == Slot::Extension {
                    let (p, e) = inner.take().expect("deeper level built first");
                    let con = extension_constructor(path[depth + 1]);
                    pats.push(MlPat::con("SOME", Some(MlPat::con(con.clone(), Some(p)))));
                    exprs.push(MlExpr::con("SOME", Some(MlExpr::con(con, Some(e)))));
                } else {
                    pats.push(MlPat::var(name.clone()));
                    exprs.push(MlExpr::var(name));
                }
            }
            inner = Some((MlPat::tuple(pats), MlExpr::tuple(exprs)));
        }
        let (p, e) = inner.expect("non-empty ancestry");
        let con = root_constructor(path[0]);
        (MlPat::con(con.clone(), Some(p)), MlExpr::con(con, Some(e)))
    }

    /// The initial heap value of a fresh `class` instance: method slots hold
    /// the most-derived implementations, fields hold defaults.
    pub fn fresh_instance(&self, class: &str) -> MlExpr {
        let path = self.table.ancestry(class);
        let mut inner: Option<MlExpr> = None;
        for (depth, level) in path.iter().enumerate().rev() {
            let items = self
                .level_slots(level)
                .iter()
                .map(|s| match s {
                    Slot::Method(m) => {
                        let owner = self.table.method_impl(class, m).expect("method resolves");
                        MlExpr::var(method_function(owner, m))
                    }
                    Slot::Field(f) => default_value(self.table.field(level, f).expect("field").1),
                    Slot::Extension => match inner.take() {
                        Some(below) => MlExpr::con(
                            "SOME",
                            Some(MlExpr::con(extension_constructor(path[depth + 1]), Some(below))),
                        ),
                        None => MlExpr::con("NONE", None),
                    },
                })
                .collect();
            inner = Some(MlExpr::tuple(items));
        }
        MlExpr::con(root_constructor(path[0]), inner)
    }
}

//! Check the consequence scripts for one k and print a derivation.

use skein::template::{basic_templates, check_derivation, thm32_scripts};

fn main() {
    let k = 2;
    let axioms = basic_templates(k).unwrap();
    for (name, t) in axioms.iter() {
        println!("axiom {name}: {t}");
    }
    let scripts = thm32_scripts(k, k + 2).unwrap();
    let valid = scripts.iter().filter(|s| check_derivation(&axioms, &s.derivation).is_valid()).count();
    println!("{valid} of {} scripts valid", scripts.len());
    let s = &scripts[0];
    let rep = check_derivation(&axioms, &s.derivation);
    println!("item {} ({}):", s.item, s.label);
    println!("{}", serde_json::to_string_pretty(&s.derivation.to_json(Some(&rep))).unwrap());
}

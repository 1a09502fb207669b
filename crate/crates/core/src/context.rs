//! Every derived object, computed once per process and shared.

use std::sync::OnceLock;

use crate::error::Result;
use crate::forms::{DTable, LambdaForm};
use crate::g2::{build_g2_basis, structure_constants, BracketTable, G2Basis};
use crate::hermitian::{hermitian_components_symbolic, SymbolicMetric};
use crate::roots::{
    build_complex_basis, change_of_basis, complexified_structure_constants, ChangeOfBasis, ComplexBasis,
    ComplexBracketTable,
};
use crate::samelson::{build_samelson, ComplexStructure};
use crate::skt::{solve_skt, torsion_c, torsion_dc, SktSolution};

pub struct Context {
    pub basis: G2Basis,
    pub table: BracketTable,
    pub complex_basis: ComplexBasis,
    pub cob: ChangeOfBasis,
    pub complex_table: ComplexBracketTable,
    pub j: ComplexStructure,
    pub dtable: DTable,
    pub metric: SymbolicMetric,
    pub c: LambdaForm,
    pub dc: LambdaForm,
    pub solution: SktSolution,
}

impl Context {
    /// Runs the whole pipeline from the 3-form.
    pub fn build() -> Result<Self> {
        let basis = build_g2_basis();
        let table = structure_constants(&basis)?;
        let complex_basis = build_complex_basis();
        let cob = change_of_basis(&complex_basis)?;
        let complex_table = complexified_structure_constants(&table, &complex_basis, &cob)?;
        let j = build_samelson(&cob);
        let dtable = DTable::new(&complex_table);
        let metric = hermitian_components_symbolic(&cob);
        let c = torsion_c(&dtable);
        let dc = torsion_dc(&dtable);
        let solution = solve_skt(&dc)?;
        Ok(Self {
            basis,
            table,
            complex_basis,
            cob,
            complex_table,
            j,
            dtable,
            metric,
            c,
            dc,
            solution,
        })
    }

    /// The process-wide instance.
    pub fn global() -> &'static Context {
        static CTX: OnceLock<Context> = OnceLock::new();
        CTX.get_or_init(|| Context::build().expect("the construction pipeline is infallible"))
    }
}

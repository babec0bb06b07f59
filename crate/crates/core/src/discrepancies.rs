//! Reference values that the engine does not reproduce, with the engine's
//! own value. Bumping an entry bumps [`LEDGER_VERSION`].

use serde::Serialize;

pub const LEDGER_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Discrepancy {
    pub id: &'static str,
    pub quantity: &'static str,
    pub reference: f64,
    pub engine: f64,
    pub note: &'static str,
}

pub const KNOWN: [Discrepancy; 10] = [
    Discrepancy {
        id: "psiB-c2",
        quantity: "C2(psiB)",
        reference: 0.8660254037844386,
        engine: 1.0,
        note: "qubit 2 is excited in 0101 and 1110 with no matching partner, so rho_2 = I/2",
    },
    Discrepancy {
        id: "psiB-c3",
        quantity: "C3(psiB)",
        reference: 1.0,
        engine: 0.8660254037844386,
        note: "rho_3 = diag(3/4, 1/4); the reference C2 and C3 are swapped, the 2|2 entries agree",
    },
    Discrepancy {
        id: "f3-closed-forms",
        quantity: "C3(F3) closed form",
        reference: 1.0,
        engine: 0.8660254037844386,
        note: "same swap as psiB: the F3 audit disagrees on C2 and C3 only",
    },
    Discrepancy {
        id: "g-psi3",
        quantity: "G(psiB) = H - 3R",
        reference: 0.92298,
        engine: 0.789008,
        note: "direct evaluation with u=v=w=sqrt(3)/2 and base (sqrt(5)/2, 1, 1)",
    },
    Discrepancy {
        id: "volume-psiD",
        quantity: "V1234(psiD)",
        reference: 0.1624,
        engine: 0.113696,
        note: "engine profile: C_i = 0.99805 (all four), C12|34 = C14|23 = 1.15843, C13|24 = 0.8",
    },
    Discrepancy {
        id: "f5-closed-forms",
        quantity: "C1(F5, a=1)",
        reference: 1.340119,
        engine: 0.989743,
        note: "closed form exceeds the one-vs-three bound of 1; every F5 entry disagrees",
    },
    Discrepancy {
        id: "f9-norm",
        quantity: "F9 normalization prefactor at (a,b,c,d) = (1,2,0.5,0.3)",
        reference: 0.333426,
        engine: 0.432742,
        note: "printed prefactor differs from 1/sqrt(a^2+b^2+c^2+d^2); states are renormalized numerically",
    },
    Discrepancy {
        id: "f9-epr-apex",
        quantity: "apex edges of F9 at a=b=c=d",
        reference: 0.0,
        engine: 1.0,
        note: "two Bell pairs have C_i = 1; the volume vanishes through the zero 13|24 base edge instead",
    },
    Discrepancy {
        id: "g-psi6-origin",
        quantity: "min G(F6) on (0,3]^2 step 0.1",
        reference: 0.0,
        engine: -0.120659,
        note: "G(F6) < 0 at a=b=0.1; the same value follows from the published G(F6) expression",
    },
    Discrepancy {
        id: "gradient-sign",
        quantity: "min volume partial on F7 grid [0,3]^2 step 0.1",
        reference: 0.0,
        engine: -0.006458,
        note: "negative partials also occur on the F6 and F8 (c=0) grids; all base pairings agree",
    },
];

pub fn find(id: &str) -> Option<&'static Discrepancy> {
    KNOWN.iter().find(|d| d.id == id)
}

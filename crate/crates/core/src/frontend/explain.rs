//! One-line statements of every identity id that appears in reports.

const TABLE: &[(&str, &str)] = &[
    ("leibniz", "[x_λ [y_μ z]] = [[x_λ y]_{λ+μ} z] + [y_μ [x_λ z]] on basis triples"),
    ("rep-left-dx", "(∂x)_λ v = −λ (x_λ v)"),
    ("rep-left-dv", "x_λ (∂v) = (∂ + λ)(x_λ v)"),
    ("rep-right-dv", "(∂v)_λ x = −λ (v_λ x)"),
    ("rep-right-dx", "v_λ (∂x) = (∂ + λ)(v_λ x)"),
    ("rep-xyv", "x_λ (y_μ v) = [x_λ y]_{λ+μ} v + y_μ (x_λ v)"),
    ("rep-xvy", "x_λ (v_μ y) = (x_λ v)_{λ+μ} y + v_μ [x_λ y]"),
    ("rep-vxy", "v_λ [x_μ y] = (v_λ x)_{λ+μ} y + x_μ (v_λ y)"),
    ("cocycle", "δφ = 0; the residual is the entry of δφ"),
    ("preimage", "some τ within the ∂/λ degree bounds has δτ = ψ"),
    ("equivalence", "ρ3' − ρ3 = δτ for the given τ, with equal complexes and ρ2"),
    ("leibnizator-", "arity-n homotopy Leibniz identity: Σ_{i+j=n+1} Σ over unshuffles ± ρ_j(x…, ρ_i(…), …) = 0 with Koszul signs"),
    ("maurer-cartan-", "arity-p component of ⟦ϱ, ϱ⟧ = Σ_{k+l=p+1} ϱ_k ◊ ϱ_l vanishes"),
    ("ii", "d ρ2(x, u) = ρ2(x, du) for x ∈ G0, u ∈ G1"),
    ("iii", "d ρ2(u, x) = ρ2(du, x) for u ∈ G1, x ∈ G0"),
    ("iv", "ρ2(du, v) = ρ2(u, dv) on G1 × G1"),
    ("v", "d ρ3(x, y, z) equals the Leibnizator of ρ2 on G0³"),
    ("vi", "ρ3(x, y, dv) equals the Leibnizator of ρ2 on (x, y, v)"),
    ("vii", "ρ3(x, dv, y) equals the Leibnizator of ρ2 on (x, v, y)"),
    ("viii", "ρ3(dv, x, y) equals the Leibnizator of ρ2 on (v, x, y)"),
    ("ix", "the ten-term cocycle condition on ρ3 against ρ2 over G0⁴"),
    ("hom-1", "d' f1 = f0 d"),
    ("hom-2", "ρ2'(f0 x, f0 y) − f0 ρ2(x, y) = d' f2(x, y)"),
    ("hom-3", "ρ2'(f0 x, f1 v) − f1 ρ2(x, v) = f2(x, dv)"),
    ("hom-4", "ρ2'(f1 v, f0 x) − f1 ρ2(v, x) = f2(dv, x)"),
    ("hom-5", "ρ3' on f0-images minus f1 ρ3 equals the six f2 correction terms"),
    ("cm-morphism", "d [a_λ b] = [da_λ db]"),
    ("cm-1", "d Φˡ_λ(h, a) = [h_λ da]"),
    ("cm-2", "d Φʳ_λ(a, h) = [da_λ h]"),
    ("cm-3l", "Φˡ_λ(da, b) = [a_λ b]"),
    ("cm-3r", "Φʳ_λ(a, db) = [a_λ b]"),
    ("cm-4", "[a_λ Φʳ_μ(b, h)] = Φʳ_{λ+μ}([a_λ b], h) + [b_μ Φʳ_λ(a, h)]"),
    ("cm-5", "[a_λ Φˡ_μ(h, b)] = [Φʳ_λ(a, h)_{λ+μ} b] + Φˡ_μ(h, [a_λ b])"),
    ("cm-6", "Φˡ_λ(h, [a_μ b]) = [Φˡ_λ(h, a)_{λ+μ} b] + [a_μ Φˡ_λ(h, b)]"),
    ("cm-rep-", "the actions Φˡ, Φʳ form a representation (same ids as rep-*)"),
    ("sum-0", "ρ2(ρ2_λ(x, y), z) + ρ2(ρ2_μ(y, x), z) = 0 at λ+μ on strict algebras"),
    ("sum-1", "the sum-0 identity with y replaced by v ∈ G1"),
    ("vs-source-unit", "s(1_x) = x"),
    ("vs-target-unit", "t(1_x) = x"),
    ("vs-left-unit", "1_{t f} ∘ f = f"),
    ("vs-right-unit", "f ∘ 1_{s f} = f"),
    ("vs-inverse", "f⁻¹ ∘ f = 1_{s f}"),
    ("vs-assoc", "(h ∘ g) ∘ f = h ∘ (g ∘ f)"),
    ("bracket-source", "s [f_λ g] = [s f_λ s g]"),
    ("bracket-target", "t [f_λ g] = [t f_λ t g]"),
    ("bracket-unit", "[1_x λ 1_y] = 1_{[x_λ y]}"),
    ("bracket-interchange", "[f' ∘ f_λ g' ∘ g] = [f'_λ g'] ∘ [f_λ g]"),
    ("leibnizator-target", "L_{x,y,z} runs from [x_λ [y_μ z]] to [[x_λ y]_{λ+μ} z] + [y_μ [x_λ z]]"),
    ("leibnizator-naturality", "L is natural in each of its three arguments"),
    ("leibnizator-coherence", "the two composites of Leibnizators between the four-fold brackets of x, y, z, w agree"),
    ("hom-source", "s F1 = F0 s"),
    ("hom-target", "t F1 = F0 t"),
    ("hom-unit", "F1(1_x) = 1_{F0 x}"),
    ("hom-f2-target", "F2 runs from [F0 x_λ F0 y]' to F0 [x_λ y]"),
    ("hom-f2-naturality", "F2 is natural in both arguments"),
    ("hom-square", "F2 and the Leibnizators of source and target commute"),
    ("roundtrip-st", "S(T(A)) = A"),
    ("roundtrip-ts", "T(S(A)) = A"),
    ("roundtrip-crossed", "strict → crossed → strict returns the input"),
    ("roundtrip-skeletal", "skeletal → (g, M, θ) → skeletal returns the input"),
    ("alpha-inverse", "α and its inverse compose to identities in both orders"),
    ("oracle-mc", "the homotopy Leibniz check and the Maurer–Cartan check agree"),
    ("oracle-shift", "unshift(shift(ρ)) = ρ"),
    ("oracle-delta-squared", "δ(δφ) = 0"),
];

/// The statement behind an identity id; numbered families such as
/// `leibnizator-3` share one entry.
pub fn explain(id: &str) -> Option<String> {
    for (key, text) in TABLE {
        if key.ends_with('-') {
            if let Some(rest) = id.strip_prefix(key) {
                if !rest.is_empty() && (rest.chars().all(|c| c.is_ascii_digit()) || key == &"cm-rep-") {
                    return Some(format!("{id}: {text}"));
                }
            }
        } else if *key == id {
            return Some(format!("{id}: {text}"));
        }
    }
    None
}

pub fn known_ids() -> Vec<&'static str> {
    TABLE.iter().map(|(k, _)| *k).collect()
}

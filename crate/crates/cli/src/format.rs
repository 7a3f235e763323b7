//! Versioned JSON persistence for catalogs.
//!
//! Arbitrary-precision integers are serialized as decimal strings, so the
//! round-trip is lossless at any size. Export is atomic: the file is written
//! to a temporary sibling and renamed into place. Import rebuilds each group
//! from its generator and class vector and cross-checks the stored
//! translation, so a corrupted file fails with an error naming the field
//! rather than producing a subtly wrong catalog.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use flatcat_core::catalog::{assemble, CatalogEntry, SCHEMA_VERSION};
use flatcat_core::cohomology::build_extension;
use flatcat_core::{
    BigInt, BigRational, Catalog, Exactness, GroupName, IntMatrix, LatticeRep, SearchBudget,
};

#[derive(Serialize, Deserialize)]
struct CatalogFile {
    schema: u32,
    dim: usize,
    orders: Vec<u64>,
    budget: BudgetDto,
    allow_torsion: bool,
    entries: Vec<EntryDto>,
    diagnostics: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct BudgetDto {
    max_coeff: i64,
    samples: usize,
}

#[derive(Serialize, Deserialize)]
struct EntryDto {
    name: String,
    dim: usize,
    order: u64,
    /// Holonomy generators acting on the translation lattice; cyclic
    /// holonomy means exactly one.
    generators: Vec<Vec<Vec<String>>>,
    class_vector: Vec<String>,
    translation: TranslationDto,
    invariants: InvariantsDto,
    exactness: String,
    torsion_free: bool,
}

#[derive(Serialize, Deserialize)]
struct TranslationDto {
    num: Vec<String>,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct InvariantsDto {
    abelianization_rank: usize,
    abelianization_torsion: Vec<String>,
    /// Pairs (subgroup order, additive order of the restricted class).
    restriction_orders: Vec<(u64, String)>,
}

fn matrix_dto(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect())
        .collect()
}

fn entry_dto(e: &CatalogEntry) -> EntryDto {
    let translation = e.group.translation();
    let den = translation
        .iter()
        .fold(BigInt::from(1), |acc, r| num_lcm(&acc, r.denom()));
    let num: Vec<String> = translation
        .iter()
        .map(|r| (r.numer() * (&den / r.denom())).to_string())
        .collect();
    EntryDto {
        name: e.name.to_string(),
        dim: e.name.dim(),
        order: e.name.m(),
        generators: vec![matrix_dto(e.group.rep().generator())],
        class_vector: e.group.class_vector().iter().map(|x| x.to_string()).collect(),
        translation: TranslationDto {
            num,
            den: den.to_string(),
        },
        invariants: InvariantsDto {
            abelianization_rank: e.rank,
            abelianization_torsion: e.torsion.iter().map(|x| x.to_string()).collect(),
            restriction_orders: e
                .restrictions
                .iter()
                .map(|(q, o)| (*q, o.to_string()))
                .collect(),
        },
        exactness: match e.exactness {
            Exactness::Certified => String::from("certified"),
            Exactness::UpperBound => String::from("upper_bound"),
        },
        torsion_free: e.torsion_free,
    }
}

fn num_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    use flatcat_core::num_integer::Integer;
    a.lcm(b)
}

/// Serialize a catalog to its canonical JSON text.
pub fn render(catalog: &Catalog) -> String {
    let file = CatalogFile {
        schema: catalog.schema,
        dim: catalog.dim,
        orders: catalog.orders.clone(),
        budget: BudgetDto {
            max_coeff: catalog.budget.max_coeff,
            samples: catalog.budget.samples,
        },
        allow_torsion: catalog.allow_torsion,
        entries: catalog.entries.iter().map(entry_dto).collect(),
        diagnostics: catalog.diagnostics.clone(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("catalog serializes");
    text.push('\n');
    text
}

/// Write atomically: temporary sibling file, then rename.
pub fn export(catalog: &Catalog, path: &Path) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or_else(|| Path::new(".")))
        .context("creating temporary file for atomic export")?;
    tmp.write_all(render(catalog).as_bytes())
        .context("writing catalog")?;
    tmp.persist(path)
        .with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

fn parse_big(s: &str, field: &dyn Fn() -> String) -> Result<BigInt> {
    s.parse::<BigInt>()
        .map_err(|_| anyhow!("{}: invalid integer {:?}", field(), s))
}

fn parse_matrix(rows: &[Vec<String>], dim: usize, field: &str) -> Result<IntMatrix> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        bail!("{}: expected a {dim}x{dim} matrix", field);
    }
    let mut parsed = vec![vec![BigInt::from(0); dim]; dim];
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            parsed[i][j] = parse_big(s, &|| format!("{}[{}][{}]", field, i, j))?;
        }
    }
    Ok(IntMatrix::from_fn(dim, dim, |i, j| parsed[i][j].clone()))
}

fn import_entry(dto: &EntryDto, idx: usize) -> Result<CatalogEntry> {
    let at = |f: &str| format!("entries[{}].{}", idx, f);
    let name = GroupName::parse(&dto.name).map_err(|e| anyhow!("{}: {}", at("name"), e))?;
    if dto.dim != name.dim() {
        bail!("{}: {} does not match name {}", at("dim"), dto.dim, dto.name);
    }
    if dto.order != name.m() {
        bail!("{}: {} does not match name {}", at("order"), dto.order, dto.name);
    }
    let dim = name.dim();
    if dto.generators.len() != 1 {
        bail!("{}: cyclic holonomy needs exactly one generator", at("generators"));
    }
    let generator = parse_matrix(&dto.generators[0], dim, &at("generators[0]"))?;
    if dto.class_vector.len() != dim {
        bail!("{}: expected {} coordinates", at("class_vector"), dim);
    }
    let mut v = Vec::with_capacity(dim);
    for (i, s) in dto.class_vector.iter().enumerate() {
        v.push(parse_big(s, &|| format!("{}[{}]", at("class_vector"), i))?);
    }
    let rep = LatticeRep::new(name.m(), generator, name.qclass());
    let mut group = build_extension(&rep, &v, true)
        .map_err(|e| anyhow!("{}: generator and class vector do not build a group: {}", at("class_vector"), e))?;
    group.set_name(dto.name.clone());

    // cross-check the stored translation against the rebuilt one
    let den = parse_big(&dto.translation.den, &|| at("translation.den"))?;
    if den == BigInt::from(0) {
        bail!("{}: zero denominator", at("translation.den"));
    }
    if dto.translation.num.len() != dim {
        bail!("{}: expected {} coordinates", at("translation.num"), dim);
    }
    for (i, s) in dto.translation.num.iter().enumerate() {
        let n = parse_big(s, &|| format!("{}[{}]", at("translation.num"), i))?;
        let stored = BigRational::new(n, den.clone());
        if &stored != &group.translation()[i] {
            bail!(
                "{}[{}]: stored {} disagrees with the rebuilt translation {}",
                at("translation.num"),
                i,
                stored,
                group.translation()[i]
            );
        }
    }

    let mut torsion = Vec::new();
    for (i, s) in dto.invariants.abelianization_torsion.iter().enumerate() {
        torsion.push(parse_big(s, &|| {
            format!("{}[{}]", at("invariants.abelianization_torsion"), i)
        })?);
    }
    let mut restrictions = Vec::new();
    for (i, (q, s)) in dto.invariants.restriction_orders.iter().enumerate() {
        restrictions.push((
            *q,
            parse_big(s, &|| format!("{}[{}]", at("invariants.restriction_orders"), i))?,
        ));
    }
    let exactness = match dto.exactness.as_str() {
        "certified" => Exactness::Certified,
        "upper_bound" => Exactness::UpperBound,
        other => bail!("{}: unknown value {:?}", at("exactness"), other),
    };
    Ok(CatalogEntry {
        name,
        group,
        rank: dto.invariants.abelianization_rank,
        torsion,
        restrictions,
        exactness,
        torsion_free: dto.torsion_free,
    })
}

/// Parse catalog JSON text back into the in-memory form.
pub fn parse(text: &str) -> Result<Catalog> {
    let file: CatalogFile = serde_json::from_str(text).context("parsing catalog JSON")?;
    if file.schema != SCHEMA_VERSION {
        bail!(
            "schema: unsupported version {} (this build reads {})",
            file.schema,
            SCHEMA_VERSION
        );
    }
    let mut entries = Vec::with_capacity(file.entries.len());
    for (i, dto) in file.entries.iter().enumerate() {
        entries.push(import_entry(dto, i)?);
    }
    let budget = SearchBudget {
        max_coeff: file.budget.max_coeff,
        samples: file.budget.samples,
    };
    Ok(assemble(
        file.dim,
        file.orders,
        &budget,
        file.allow_torsion,
        entries,
        file.diagnostics,
    ))
}

/// Read a catalog file.
pub fn import(path: &Path) -> Result<Catalog> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("in {}", path.display()))
}

/// Human-readable rendering: one line per entry plus totals.
pub fn render_text(catalog: &Catalog) -> String {
    let mut out = String::new();
    out += &format!(
        "dim {} catalog: {} entries over orders {:?}\n",
        catalog.dim,
        catalog.entries.len(),
        catalog.orders
    );
    for e in &catalog.entries {
        out += &format!(
            "{:<40} order {:>2}  rank {}  torsion {:?}  {}{}\n",
            e.name.to_string(),
            e.name.m(),
            e.rank,
            e.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            match e.exactness {
                Exactness::Certified => "certified",
                Exactness::UpperBound => "upper bound",
            },
            if e.torsion_free { "" } else { "  [has torsion]" },
        );
    }
    for (m, c) in catalog.counts_by_order() {
        out += &format!("order {:>2}: {} entries\n", m, c);
    }
    if !catalog.diagnostics.is_empty() {
        out += &format!("{} diagnostics:\n", catalog.diagnostics.len());
        for d in &catalog.diagnostics {
            out += &format!("  {}\n", d);
        }
    }
    out
}

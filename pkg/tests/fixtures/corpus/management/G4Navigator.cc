#include "G4Navigator.hh"
#include "G4VSolid.hh"

G4Navigator::G4Navigator() = default;
G4Navigator::~G4Navigator() = default;

// ********************************************************************
// ComputeStep
//
// Computes the next geometric Step: intersections with current
// mother and `daughter' volumes.
// ********************************************************************
G4double G4Navigator::ComputeStep(const G4ThreeVector& pGlobalpoint,
                                  const G4ThreeVector& pDirection,
                                  const G4double pCurrentProposedStepLength,
                                        G4double& pNewSafety)
{
  G4double Step = pCurrentProposedStepLength;
  fEntering = false;  fExiting = false;

  if (fTopVolume == nullptr) return kInfinity;
  G4VSolid* solid = fTopVolume->GetSolid();
  pNewSafety = solid->DistanceToIn(pGlobalpoint);

  if (fVerbose > 3 || (Step < 0 && pNewSafety > 0))
  {
    G4cout << "    Step = " << Step << " /* not a comment */" << G4endl;
  }
  if (Step == 0.0)
  {
    ++fNumberZeroSteps;
    if (fNumberZeroSteps > 10 && fVerbose > 0) { fExiting = true; }
  }
  else { fNumberZeroSteps = 0; }
  return Step;
}

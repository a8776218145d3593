#include "G4VEmProcess.hh"
#include "G4VEmModel.hh"

G4VEmProcess::G4VEmProcess(const G4String& name, G4ProcessType type)
  : G4VProcess(name, type)
{
  SetVerboseLevel(1);
  emModels.reserve(4);
}

G4VEmProcess::~G4VEmProcess()
{
  for (auto m : emModels) { delete m; }
}

void G4VEmProcess::AddEmModel(G4int order, G4VEmModel* model)
{
  if (nullptr == model) { return; }
  model->SetPriority(order);
  emModels.push_back(model);
}

G4double G4VEmProcess::CrossSectionPerVolume(G4double e,
                                             const G4MaterialCutsCouple* couple)
{
  G4double cross = 0.0;
  for (auto m : emModels) {
    if (m->IsActive(e) && couple != nullptr) {
      cross += m->CrossSectionPerVolume(couple->GetMaterial(), e);
    }
  }
  return cross;
}

G4double G4VEmProcess::PostStepGetPhysicalInteractionLength(const G4Track& track,
                                                            G4double)
{
  preStepKinEnergy = track.GetKineticEnergy();
  preStepLambda = CrossSectionPerVolume(preStepKinEnergy, track.GetMaterialCutsCouple());
  if (preStepLambda <= 0.0) { return DBL_MAX; }
  if (theNumberOfInteractionLengthLeft < 0.0) { ResetNumberOfInteractionLengthLeft(); }
  return theNumberOfInteractionLengthLeft / preStepLambda;
}

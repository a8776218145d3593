#ifndef G4VEMPROCESS_HH
#define G4VEMPROCESS_HH 1

#include "G4VProcess.hh"
#include <vector>

class G4VEmModel;

class G4VEmProcess : public G4VProcess
{
  public:
    explicit G4VEmProcess(const G4String& name,
                          G4ProcessType type = fElectromagnetic);
    ~G4VEmProcess() override;

    G4double PostStepGetPhysicalInteractionLength(const G4Track& track,
                                                  G4double previousStepSize) override;

    void AddEmModel(G4int order, G4VEmModel* model);
    G4double CrossSectionPerVolume(G4double kineticEnergy, const G4MaterialCutsCouple* couple);

  protected:
    virtual void InitialiseProcess(const G4ParticleDefinition*) = 0;

    G4bool isInitialised = false;
    std::vector<G4VEmModel*> emModels;
    G4double preStepLambda = 0.0;
    G4double preStepKinEnergy = 0.0;
};

#endif

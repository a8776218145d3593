#ifndef G4PHOTOELECTRICEFFECT_HH
#define G4PHOTOELECTRICEFFECT_HH 1

#include "G4VEmProcess.hh"

class G4PhotoElectricEffect : public G4VEmProcess
{
  public:
    explicit G4PhotoElectricEffect(const G4String& processName = "phot",
                                   G4ProcessType type = fElectromagnetic);
    ~G4PhotoElectricEffect() override;

    G4bool IsApplicable(const G4ParticleDefinition&) override;

  protected:
    void InitialiseProcess(const G4ParticleDefinition*) override;

  private:
    G4bool isInitialised = false;
};

#endif
